//! Reference solvers used to cross-check the template algorithms.
//!
//! Nothing here calls into [`crate::solvers`]. Zielonka's algorithm works on
//! physically restricted graphs; the other two enumerate strategies and
//! only scale to a handful of vertices.

use crate::error::OracleError;
use crate::graph::{restrict, GameGraph, Player, PriorityFunction, VertexId, VertexSet};
use crate::transformers::attr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleRegions {
    pub region0: VertexSet,
    pub region1: VertexSet,
}

/// Classical recursive Zielonka.
pub fn zielonka_regions(g: &GameGraph, p: &PriorityFunction) -> OracleRegions {
    let n = g.vertex_count();
    let ids: Vec<VertexId> = g.vertices().collect();
    let (w0, w1) = zielonka(g, p.priorities(), &ids);
    OracleRegions {
        region0: VertexSet::from_vertices(n, w0),
        region1: VertexSet::from_vertices(n, w1),
    }
}

/// Returns both regions as lists of original vertex ids; `ids[i]` is the
/// original id of vertex `i` of `g`.
fn zielonka(g: &GameGraph, prio: &[u32], ids: &[VertexId]) -> (Vec<VertexId>, Vec<VertexId>) {
    let mut won: [Vec<VertexId>; 2] = [Vec::new(), Vec::new()];
    let mut g = g.clone();
    let mut prio = prio.to_vec();
    let mut ids = ids.to_vec();
    loop {
        let n = g.vertex_count();
        if n == 0 {
            break;
        }
        let d = *prio.iter().max().expect("non-empty graph");
        let me = Player::from_priority(d);
        let top = VertexSet::from_vertices(n, (0..n).filter(|&i| prio[i] == d).map(VertexId::new));
        let a = attr(&g, &top, me);
        let (sub_g, sub_prio, sub_ids) = shrink(&g, &prio, &ids, &a);
        let (s0, s1) = zielonka(&sub_g, &sub_prio, &sub_ids);
        let theirs = if me == Player::Zero { s1 } else { s0 };
        if theirs.is_empty() {
            won[me.index()].extend(ids.iter().copied());
            break;
        }
        let span = ids.iter().map(|v| v.index() + 1).max().unwrap_or(0);
        let mut local = vec![usize::MAX; span];
        for (i, v) in ids.iter().enumerate() {
            local[v.index()] = i;
        }
        let theirs_set =
            VertexSet::from_vertices(n, theirs.iter().map(|v| VertexId::new(local[v.index()])));
        let b = attr(&g, &theirs_set, me.opponent());
        won[me.opponent().index()].extend(b.iter().map(|v| ids[v.index()]));
        let (ng, np, ni) = shrink(&g, &prio, &ids, &b);
        g = ng;
        prio = np;
        ids = ni;
    }
    let [w0, w1] = won;
    (w0, w1)
}

/// The subgame on the complement of `remove`, which must be an attractor.
fn shrink(
    g: &GameGraph,
    prio: &[u32],
    ids: &[VertexId],
    remove: &VertexSet,
) -> (GameGraph, Vec<u32>, Vec<VertexId>) {
    let keep = remove.complement();
    let (sub, map) = restrict(g, &keep).expect("attractor complements are traps");
    let sub_prio = (0..sub.vertex_count())
        .map(|i| prio[map.to_old(VertexId::new(i)).index()])
        .collect();
    let sub_ids = (0..sub.vertex_count())
        .map(|i| ids[map.to_old(VertexId::new(i)).index()])
        .collect();
    (sub, sub_prio, sub_ids)
}

pub const GEN_PARITY_LIMIT: usize = 12;
pub const OPPONENT_STRATEGY_LIMIT: u128 = 1 << 20;
pub const POSITIONAL_LIMIT: usize = 7;

fn strategy_count(g: &GameGraph, owner: Player) -> u128 {
    g.vertices()
        .filter(|&v| g.owner(v) == owner)
        .map(|v| g.out_degree(v) as u128)
        .fold(1u128, |acc, d| acc.saturating_mul(d))
}

/// Odometer over positional choices of one player. `choice[v]` indexes into
/// the successor list of `v` and is always 0 for the other player.
struct Positional {
    owned: Vec<VertexId>,
    choice: Vec<usize>,
    first: bool,
}

impl Positional {
    fn new(g: &GameGraph, owner: Player) -> Self {
        Positional {
            owned: g.vertices().filter(|&v| g.owner(v) == owner).collect(),
            choice: vec![0; g.vertex_count()],
            first: true,
        }
    }

    fn advance(&mut self, g: &GameGraph) -> bool {
        if self.first {
            self.first = false;
            return true;
        }
        for &v in &self.owned {
            let c = &mut self.choice[v.index()];
            *c += 1;
            if *c < g.out_degree(v) {
                return true;
            }
            *c = 0;
        }
        false
    }
}

/// Successor bitmasks of the graph where `fixed` vertices follow `choice`.
fn masks(g: &GameGraph, fixed: Player, choice: &[usize]) -> Vec<u32> {
    g.vertices()
        .map(|v| {
            if g.owner(v) == fixed {
                1u32 << g.successors(v)[choice[v.index()]].0
            } else {
                g.successors(v).iter().fold(0u32, |m, w| m | (1 << w.0))
            }
        })
        .collect()
}

/// Vertices reachable from the set `from` (bitmask) inside `within`.
fn reach_mask(succ: &[u32], from: u32, within: u32) -> u32 {
    let mut seen = from & within;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u32;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= succ[v];
        }
        next &= within & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

/// `t` induces a strongly connected subgraph with at least one edge.
fn strongly_connected(succ: &[u32], pred: &[u32], t: u32) -> bool {
    let root = 1u32 << t.trailing_zeros();
    if reach_mask(succ, root, t) != t || reach_mask(pred, root, t) != t {
        return false;
    }
    if t.count_ones() == 1 {
        return succ[t.trailing_zeros() as usize] & t != 0;
    }
    true
}

fn predecessors(succ: &[u32]) -> Vec<u32> {
    let mut pred = vec![0u32; succ.len()];
    for (v, &m) in succ.iter().enumerate() {
        let mut f = m;
        while f != 0 {
            let w = f.trailing_zeros() as usize;
            f &= f - 1;
            pred[w] |= 1 << v;
        }
    }
    pred
}

/// Player-0 winning region of the conjunction of `objectives`, by
/// enumerating every positional Player-1 strategy and solving the remaining
/// one-player game through its strongly connected vertex subsets.
pub fn brute_force_gen_parity_region(
    g: &GameGraph,
    objectives: &[PriorityFunction],
) -> Result<VertexSet, OracleError> {
    let n = g.vertex_count();
    if n > GEN_PARITY_LIMIT {
        return Err(OracleError::TooLarge {
            limit: GEN_PARITY_LIMIT,
            got: n,
        });
    }
    let count = strategy_count(g, Player::One);
    if count > OPPONENT_STRATEGY_LIMIT {
        return Err(OracleError::TooManyStrategies {
            limit: OPPONENT_STRATEGY_LIMIT,
            got: count,
        });
    }
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let even_everywhere: Vec<u32> = (1..=full)
        .filter(|&t| {
            objectives.iter().all(|p| {
                let top = (0..n)
                    .filter(|&i| t & (1 << i) != 0)
                    .map(|i| p.priority(VertexId::new(i)))
                    .max()
                    .unwrap_or(0);
                top % 2 == 0
            })
        })
        .collect();

    let mut region = full;
    let mut sigma = Positional::new(g, Player::One);
    while sigma.advance(g) {
        let succ = masks(g, Player::One, &sigma.choice);
        let pred = predecessors(&succ);
        let mut good = 0u32;
        for &t in &even_everywhere {
            if t & !good != 0 && strongly_connected(&succ, &pred, t) {
                good |= t;
            }
        }
        let win = reach_mask(&pred, good, full);
        region &= win;
        if region == 0 {
            break;
        }
    }
    Ok(VertexSet::from_vertices(
        n,
        (0..n)
            .filter(|&i| region & (1 << i) != 0)
            .map(VertexId::new),
    ))
}

/// Objective accepted by [`enumerate_winning_positional`].
#[derive(Clone, Debug)]
pub enum Objective {
    /// Stay inside the set forever.
    Safety(VertexSet),
    Parity(PriorityFunction),
}

/// A positional Player-0 strategy: the chosen successor of each Player-0
/// vertex, `None` at Player-1 vertices.
pub type PositionalStrategy = Vec<Option<VertexId>>;

/// All positional Player-0 strategies that win from every vertex of the
/// Player-0 winning region, together with that region.
pub fn enumerate_winning_positional(
    g: &GameGraph,
    objective: &Objective,
) -> Result<(VertexSet, Vec<PositionalStrategy>), OracleError> {
    let n = g.vertex_count();
    if n > POSITIONAL_LIMIT {
        return Err(OracleError::TooLarge {
            limit: POSITIONAL_LIMIT,
            got: n,
        });
    }
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut wins: Vec<(PositionalStrategy, u32)> = Vec::new();
    let mut tau = Positional::new(g, Player::Zero);
    while tau.advance(g) {
        let succ = masks(g, Player::Zero, &tau.choice);
        let pred = predecessors(&succ);
        let lose = match objective {
            Objective::Safety(safe) => {
                let bad = (0..n)
                    .filter(|&i| !safe.contains(VertexId::new(i)))
                    .fold(0u32, |m, i| m | (1 << i));
                reach_mask(&pred, bad, full)
            }
            Objective::Parity(p) => {
                let mut bad = 0u32;
                for i in 0..n {
                    let pi = p.priority(VertexId::new(i));
                    if pi % 2 == 0 {
                        continue;
                    }
                    let low = (0..n)
                        .filter(|&j| p.priority(VertexId::new(j)) <= pi)
                        .fold(0u32, |m, j| m | (1 << j));
                    let fwd = reach_mask(&succ, succ[i] & low, low);
                    if fwd & (1 << i) != 0 {
                        bad |= 1 << i;
                    }
                }
                reach_mask(&pred, bad, full)
            }
        };
        let strategy = g
            .vertices()
            .map(|v| match g.owner(v) {
                Player::Zero => Some(g.successors(v)[tau.choice[v.index()]]),
                Player::One => None,
            })
            .collect();
        wins.push((strategy, full & !lose));
    }
    let region = wins.iter().fold(0u32, |m, (_, w)| m | w);
    let winning = wins
        .into_iter()
        .filter(|(_, w)| w & region == region)
        .map(|(s, _)| s)
        .collect();
    let region = VertexSet::from_vertices(
        n,
        (0..n)
            .filter(|&i| region & (1 << i) != 0)
            .map(VertexId::new),
    );
    Ok((region, winning))
}
