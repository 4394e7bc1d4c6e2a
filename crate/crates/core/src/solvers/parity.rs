use crate::error::SolveError;
use crate::graph::{EdgeSet, GameGraph, Player, PriorityFunction, VertexSet};
use crate::template::{LiveGroup, StrategyTemplate};
use crate::transformers::attr_within;

use super::reach::reach_groups;
use super::{player0_edges, reach_template_within, SolveResult};

/// Zielonka-style recursion that records live groups and co-live edges on
/// the way. `S` is the set of Player-0 edges from `W0` to `W1`.
pub fn parity_template(g: &GameGraph, p: &PriorityFunction) -> Result<SolveResult, SolveError> {
    parity_template_within(g, p, &g.full_set())
}

/// Solves the subgame on `domain`, which must be a trap for Player 1 in
/// which every Player-0 vertex keeps a successor.
pub fn parity_template_within(
    g: &GameGraph,
    p: &PriorityFunction,
    domain: &VertexSet,
) -> Result<SolveResult, SolveError> {
    if p.len() != g.vertex_count() {
        return Err(SolveError::PriorityArity {
            expected: g.vertex_count(),
            got: p.len(),
        });
    }
    let out = Solver { g, p }.solve(domain.clone())?;
    let mut template = StrategyTemplate {
        unsafe_edges: player0_edges(g, &out.w0, &out.w1),
        colive: out.colive,
        live_groups: Vec::new(),
        region: out.w0,
    };
    template.push_groups(out.groups);
    Ok(SolveResult::new(template, domain))
}

struct Solver<'a> {
    g: &'a GameGraph,
    p: &'a PriorityFunction,
}

struct Partial {
    w0: VertexSet,
    w1: VertexSet,
    groups: Vec<LiveGroup>,
    colive: EdgeSet,
}

impl Solver<'_> {
    fn top(&self, domain: &VertexSet) -> (u32, VertexSet) {
        let d = domain.iter().map(|v| self.p.priority(v)).max().unwrap_or(0);
        let top = self
            .g
            .set_of(domain.iter().filter(|&v| self.p.priority(v) == d));
        (d, top)
    }

    fn solve(&self, mut domain: VertexSet) -> Result<Partial, SolveError> {
        let g = self.g;
        let mut acc = Partial {
            w0: g.empty_set(),
            w1: g.empty_set(),
            groups: Vec::new(),
            colive: EdgeSet::new(),
        };
        while !domain.is_empty() {
            let (d, top) = self.top(&domain);
            if d % 2 == 1 {
                let a = attr_within(g, &domain, &top, Player::One);
                if a == domain {
                    acc.w1.union_with(&domain);
                    break;
                }
                let sub = self.solve(domain.difference(&a))?;
                if sub.w0.is_empty() {
                    acc.w1.union_with(&domain);
                    break;
                }
                let b = attr_within(g, &domain, &sub.w0, Player::Zero);
                acc.colive.extend_from(&sub.colive);
                acc.colive
                    .extend_from(&player0_edges(g, &sub.w0, &domain.difference(&sub.w0)));
                acc.groups.extend(sub.groups);
                acc.groups.extend(reach_groups(g, &domain, &b, &sub.w0)?);
                acc.w0.union_with(&b);
                domain.difference_with(&b);
            } else {
                let a = attr_within(g, &domain, &top, Player::Zero);
                if a == domain {
                    acc.w0.union_with(&domain);
                    acc.groups.extend(reach_template_within(g, &domain, &top)?);
                    break;
                }
                let sub = self.solve(domain.difference(&a))?;
                if sub.w1.is_empty() {
                    acc.w0.union_with(&domain);
                    acc.colive.extend_from(&sub.colive);
                    acc.groups.extend(sub.groups);
                    acc.groups.extend(reach_groups(g, &domain, &a, &top)?);
                    break;
                }
                let b = attr_within(g, &domain, &sub.w1, Player::One);
                acc.w1.union_with(&b);
                domain.difference_with(&b);
            }
        }
        Ok(acc)
    }
}
