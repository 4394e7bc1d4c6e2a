//! Set transformers: universal and controllable predecessors and the
//! attractors built from them.
//!
//! The `*_within` variants work on the subgame induced by a `domain` set,
//! which is how the solvers express `G|_U` without materializing a new
//! graph. Attractors use the usual per-vertex counter worklist and touch
//! every edge at most once.

use crate::graph::{GameGraph, Player, VertexId, VertexSet};

/// Who is doing the attracting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Attraction {
    /// Vertices of this player need one successor in the set, the others all.
    Player(Player),
    /// Every vertex needs all of its successors in the set.
    Universal,
}

/// `{v | every successor of v is in u}`.
pub fn upre(g: &GameGraph, u: &VertexSet) -> VertexSet {
    g.set_of(
        g.vertices()
            .filter(|&v| g.successors(v).iter().all(|t| u.contains(*t))),
    )
}

/// Vertices from which `player` can force the next vertex to lie in `u`.
pub fn cpre(g: &GameGraph, u: &VertexSet, player: Player) -> VertexSet {
    g.set_of(g.vertices().filter(|&v| {
        if g.owner(v) == player {
            g.successors(v).iter().any(|t| u.contains(*t))
        } else {
            g.successors(v).iter().all(|t| u.contains(*t))
        }
    }))
}

/// Least fixpoint of `X -> u ∪ cpre(X, player)`.
pub fn attr(g: &GameGraph, u: &VertexSet, player: Player) -> VertexSet {
    attr_within(g, &g.full_set(), u, player)
}

/// Least fixpoint of `X -> u ∪ upre(X)`.
pub fn uattr(g: &GameGraph, u: &VertexSet) -> VertexSet {
    uattr_within(g, &g.full_set(), u)
}

pub fn attr_within(g: &GameGraph, domain: &VertexSet, u: &VertexSet, player: Player) -> VertexSet {
    attractor_within(g, domain, u, Attraction::Player(player))
}

pub fn uattr_within(g: &GameGraph, domain: &VertexSet, u: &VertexSet) -> VertexSet {
    attractor_within(g, domain, u, Attraction::Universal)
}

/// Vertices of `domain` from which Player 0 can keep the play inside `safe`
/// forever, within the subgame on `domain`.
pub fn safe_within(g: &GameGraph, domain: &VertexSet, safe: &VertexSet) -> VertexSet {
    let unsafe_part = domain.difference(safe);
    let escape = attr_within(g, domain, &unsafe_part, Player::One);
    domain.difference(&escape)
}

/// Counters of successors inside `domain`, computed on first use.
struct Remaining<'a> {
    g: &'a GameGraph,
    domain: &'a VertexSet,
    count: Vec<u32>,
}

const UNSET: u32 = u32::MAX;

impl<'a> Remaining<'a> {
    fn new(g: &'a GameGraph, domain: &'a VertexSet) -> Self {
        Remaining {
            g,
            domain,
            count: vec![UNSET; g.vertex_count()],
        }
    }

    /// Decrements the counter of `v` and reports whether it hit zero.
    fn decrement(&mut self, v: VertexId) -> bool {
        let c = &mut self.count[v.index()];
        if *c == UNSET {
            *c = self
                .g
                .successors(v)
                .iter()
                .filter(|t| self.domain.contains(**t))
                .count() as u32;
        }
        *c -= 1;
        *c == 0
    }
}

pub fn attractor_within(
    g: &GameGraph,
    domain: &VertexSet,
    u: &VertexSet,
    mode: Attraction,
) -> VertexSet {
    let mut closure = Closure::new(g, domain, mode);
    closure.extend(u.iter());
    closure.into_set()
}

/// An attractor that can be grown in steps. Each call to [`Closure::extend`]
/// adds seeds and closes the set again; the total work over all calls is
/// linear in the edges of the domain.
pub struct Closure<'a> {
    g: &'a GameGraph,
    domain: &'a VertexSet,
    mode: Attraction,
    inside: VertexSet,
    remaining: Remaining<'a>,
}

impl<'a> Closure<'a> {
    pub fn new(g: &'a GameGraph, domain: &'a VertexSet, mode: Attraction) -> Self {
        Closure {
            g,
            domain,
            mode,
            inside: g.empty_set(),
            remaining: Remaining::new(g, domain),
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.inside.contains(v)
    }

    pub fn len(&self) -> usize {
        self.inside.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inside.is_empty()
    }

    pub fn set(&self) -> &VertexSet {
        &self.inside
    }

    pub fn into_set(self) -> VertexSet {
        self.inside
    }

    /// Adds the seeds that lie in the domain and closes. Returns every vertex
    /// that became a member during this call.
    pub fn extend(&mut self, seeds: impl IntoIterator<Item = VertexId>) -> Vec<VertexId> {
        let mut added = Vec::new();
        for v in seeds {
            if self.domain.contains(v) && self.inside.insert(v) {
                added.push(v);
            }
        }
        let mut next = 0;
        while next < added.len() {
            let v = added[next];
            next += 1;
            for &p in self.g.predecessors(v) {
                if !self.domain.contains(p) || self.inside.contains(p) {
                    continue;
                }
                let attracted = match self.mode {
                    Attraction::Player(a) if self.g.owner(p) == a => true,
                    _ => self.remaining.decrement(p),
                };
                if attracted {
                    self.inside.insert(p);
                    added.push(p);
                }
            }
        }
        added
    }
}

/// The Player-0 attractor of `u` inside `domain`, split into the layers
/// `cpre(A_i) \ A_i` in the order they are added. `u ∩ domain` itself is
/// not part of the output.
pub fn attr0_layers_within(g: &GameGraph, domain: &VertexSet, u: &VertexSet) -> Vec<Vec<VertexId>> {
    let mut inside = u.intersection(domain);
    let mut current: Vec<VertexId> = inside.iter().collect();
    let mut remaining = Remaining::new(g, domain);
    let mut layers = Vec::new();

    loop {
        let mut next = Vec::new();
        let mut queued = g.empty_set();
        for &v in &current {
            for &p in g.predecessors(v) {
                if !domain.contains(p) || inside.contains(p) || queued.contains(p) {
                    continue;
                }
                let attracted = g.owner(p) == Player::Zero || remaining.decrement(p);
                if attracted {
                    queued.insert(p);
                    next.push(p);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_unstable();
        for &v in &next {
            inside.insert(v);
        }
        layers.push(next.clone());
        current = next;
    }
    layers
}

/// `cpre(u, player)` computed from the predecessors of `u` with counters,
/// restricted to vertices outside `u`, plus the vertices of `u` that
/// satisfy the definition. Equal to [`cpre`]; kept as a separate code path
/// so the two can be cross-checked.
pub fn cpre_worklist(g: &GameGraph, u: &VertexSet, player: Player) -> VertexSet {
    let mut hits = vec![0u32; g.vertex_count()];
    for v in u.iter() {
        for &p in g.predecessors(v) {
            hits[p.index()] += 1;
        }
    }
    g.set_of(g.vertices().filter(|&v| {
        let h = hits[v.index()] as usize;
        if g.owner(v) == player {
            h > 0
        } else {
            h == g.out_degree(v)
        }
    }))
}
