use crate::graph::{Edge, EdgeSet, GameGraph, Player, VertexSet};
use crate::template::StrategyTemplate;
use crate::transformers::{attr0_layers_within, attr_within, safe_within};

use super::{player0_edges, SolveResult};

/// Vertices from which Player 0 can eventually stay in `stay` forever.
pub fn cobuchi_win(g: &GameGraph, stay: &VertexSet) -> VertexSet {
    cobuchi_win_within(g, &g.full_set(), stay)
}

pub fn cobuchi_win_within(g: &GameGraph, domain: &VertexSet, stay: &VertexSet) -> VertexSet {
    let mut cur = domain.clone();
    let mut won = VertexSet::empty(g.vertex_count());
    loop {
        let safe = safe_within(g, &cur, &stay.intersection(&cur));
        if safe.is_empty() {
            return won;
        }
        let block = attr_within(g, &cur, &safe, Player::Zero);
        won.union_with(&block);
        cur.difference_with(&block);
    }
}

/// Peels the winning region block by block. Inside a block, edges leaving
/// the safe core and edges of attractor vertices that do not make progress
/// towards it are co-live.
pub fn cobuchi_template(g: &GameGraph, stay: &VertexSet) -> SolveResult {
    let w0 = cobuchi_win(g, stay);
    let mut colive = EdgeSet::new();
    let mut cur = w0.clone();
    while !cur.is_empty() {
        let core = safe_within(g, &cur, &stay.intersection(&cur));
        if core.is_empty() {
            break;
        }
        colive.extend_from(&player0_edges(g, &core, &cur.difference(&core)));
        let mut done = core;
        for layer in attr0_layers_within(g, &cur, &done.clone()) {
            for &b in &layer {
                if g.owner(b) != Player::Zero {
                    continue;
                }
                for &t in g.successors(b) {
                    if cur.contains(t) && !done.contains(t) {
                        colive.insert(Edge::new(b, t));
                    }
                }
            }
            for &b in &layer {
                done.insert(b);
            }
        }
        cur.difference_with(&done);
    }
    let template = StrategyTemplate {
        unsafe_edges: player0_edges(g, &w0, &w0.complement()),
        colive,
        ..StrategyTemplate::unconstrained(w0)
    };
    SolveResult::new(template, &g.full_set())
}
