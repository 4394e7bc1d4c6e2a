use crate::graph::{GameGraph, VertexSet};
use crate::template::StrategyTemplate;
use crate::transformers::safe_within;

use super::{player0_edges, SolveResult};

/// Vertices from which Player 0 can keep the play in `safe` forever.
pub fn safety_win(g: &GameGraph, safe: &VertexSet) -> VertexSet {
    safe_within(g, &g.full_set(), safe)
}

/// The unsafe edges are exactly the Player-0 edges leaving the winning region.
pub fn safety_template(g: &GameGraph, safe: &VertexSet) -> SolveResult {
    let w0 = safety_win(g, safe);
    let lose = w0.complement();
    let template = StrategyTemplate {
        unsafe_edges: player0_edges(g, &w0, &lose),
        ..StrategyTemplate::unconstrained(w0)
    };
    SolveResult::new(template, &g.full_set())
}
