//! Template synthesis, from safety objectives up to parity objectives.

mod buchi;
mod cobuchi;
mod parity;
mod reach;
mod safety;

pub use buchi::{buchi_template, buchi_win, buchi_win_within};
pub use cobuchi::{cobuchi_template, cobuchi_win, cobuchi_win_within};
pub use parity::{parity_template, parity_template_within};
pub use reach::{reach_template, reach_template_within};
pub use safety::{safety_template, safety_win};

use crate::graph::{Edge, EdgeSet, GameGraph, Player, VertexSet};
use crate::template::StrategyTemplate;

/// Winning regions of both players and a template for Player 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub region0: VertexSet,
    pub region1: VertexSet,
    pub template: StrategyTemplate,
}

impl SolveResult {
    pub(crate) fn new(template: StrategyTemplate, domain: &VertexSet) -> Self {
        SolveResult {
            region0: template.region.clone(),
            region1: domain.difference(&template.region),
            template,
        }
    }
}

/// Player-0 edges from `from` into `to`.
pub(crate) fn player0_edges(g: &GameGraph, from: &VertexSet, to: &VertexSet) -> EdgeSet {
    let mut out = EdgeSet::new();
    for v in from.iter() {
        if g.owner(v) != Player::Zero {
            continue;
        }
        for &w in g.successors(v) {
            if to.contains(w) {
                out.insert(Edge::new(v, w));
            }
        }
    }
    out
}
