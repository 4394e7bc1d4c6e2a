use crate::error::SolveError;
use crate::graph::{GameGraph, Player, VertexSet};
use crate::template::StrategyTemplate;
use crate::transformers::attr_within;

use super::{player0_edges, reach_template_within, SolveResult};

/// Vertices from which Player 0 can visit `goal` infinitely often.
pub fn buchi_win(g: &GameGraph, goal: &VertexSet) -> VertexSet {
    buchi_win_within(g, &g.full_set(), goal)
}

pub fn buchi_win_within(g: &GameGraph, domain: &VertexSet, goal: &VertexSet) -> VertexSet {
    let mut cur = domain.clone();
    loop {
        let hit = goal.intersection(&cur);
        let reach = attr_within(g, &cur, &hit, Player::Zero);
        let trap = cur.difference(&reach);
        if trap.is_empty() {
            return cur;
        }
        let lost = attr_within(g, &cur, &trap, Player::One);
        cur.difference_with(&lost);
    }
}

/// Unsafe edges leave the winning region; live groups steer back to `goal`.
pub fn buchi_template(g: &GameGraph, goal: &VertexSet) -> Result<SolveResult, SolveError> {
    let w0 = if goal.is_empty() {
        g.empty_set()
    } else {
        buchi_win(g, goal)
    };
    let groups = reach_template_within(g, &w0, &goal.intersection(&w0))?;
    let template = StrategyTemplate {
        unsafe_edges: player0_edges(g, &w0, &w0.complement()),
        live_groups: groups,
        ..StrategyTemplate::unconstrained(w0)
    };
    Ok(SolveResult::new(template, &g.full_set()))
}
