//! Strategy templates and conflict detection.

use std::fmt;

use crate::graph::{Edge, EdgeSet, GameGraph, Player, VertexId, VertexSet};

/// A set of Player-0 edges of which one must be taken infinitely often
/// whenever a source vertex of the group is visited infinitely often.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LiveGroup {
    edges: EdgeSet,
}

impl LiveGroup {
    /// Keeps only the Player-0-sourced edges. Returns `None` if none remain.
    pub fn new(g: &GameGraph, edges: impl IntoIterator<Item = Edge>) -> Option<LiveGroup> {
        let edges: EdgeSet = edges
            .into_iter()
            .filter(|e| g.owner(e.source) == Player::Zero)
            .collect();
        if edges.is_empty() {
            None
        } else {
            Some(LiveGroup { edges })
        }
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Distinct source vertices in ascending order.
    pub fn sources(&self) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self.edges.iter().map(|e| e.source).collect();
        out.dedup();
        out
    }

    /// Edges of the group leaving `v`.
    pub fn at(&self, v: VertexId) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.from_source(v)
    }
}

impl fmt::Debug for LiveGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.edges.fmt(f)
    }
}

/// Edge constraints valid from the winning region `W0`. `S` holds the
/// unsafe edges and `D` the co-live ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyTemplate {
    pub unsafe_edges: EdgeSet,
    pub colive: EdgeSet,
    pub live_groups: Vec<LiveGroup>,
    pub region: VertexSet,
}

impl StrategyTemplate {
    /// No constraints, winning region `region`.
    pub fn unconstrained(region: VertexSet) -> Self {
        StrategyTemplate {
            unsafe_edges: EdgeSet::new(),
            colive: EdgeSet::new(),
            live_groups: Vec::new(),
            region,
        }
    }

    /// No constraints, winning everywhere. The identity of [`conjoin`].
    pub fn trivial(g: &GameGraph) -> Self {
        Self::unconstrained(g.full_set())
    }

    /// `S ∪ D` contains `e`.
    pub fn blocks(&self, e: &Edge) -> bool {
        self.unsafe_edges.contains(e) || self.colive.contains(e)
    }

    pub fn is_conflict_free(&self, g: &GameGraph) -> bool {
        find_conflicts(g, self).is_empty()
    }

    /// Appends groups not already present.
    pub fn push_groups(&mut self, groups: impl IntoIterator<Item = LiveGroup>) {
        for h in groups {
            if !self.live_groups.contains(&h) {
                self.live_groups.push(h);
            }
        }
    }
}

/// Union of the edge constraints, concatenation of the live groups and
/// intersection of the winning regions.
pub fn conjoin(t1: &StrategyTemplate, t2: &StrategyTemplate) -> StrategyTemplate {
    let mut out = StrategyTemplate {
        unsafe_edges: t1.unsafe_edges.union(&t2.unsafe_edges),
        colive: t1.colive.union(&t2.colive),
        live_groups: Vec::new(),
        region: t1.region.intersection(&t2.region),
    };
    out.push_groups(t1.live_groups.iter().cloned());
    out.push_groups(t2.live_groups.iter().cloned());
    out
}

/// Vertices at which a template cannot be followed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictReport {
    /// Player-0 vertices of `W0` whose edges into `W0` are all unsafe or co-live.
    pub dead: VertexSet,
    /// `(vertex, group index)` pairs where every edge of the group at the
    /// vertex that stays in `W0` is unsafe or co-live.
    pub starved: Vec<(VertexId, usize)>,
}

impl ConflictReport {
    pub fn is_empty(&self) -> bool {
        self.dead.is_empty() && self.starved.is_empty()
    }

    pub fn starved_vertices(&self) -> VertexSet {
        let mut out = VertexSet::empty(self.dead.universe());
        for (v, _) in &self.starved {
            out.insert(*v);
        }
        out
    }

    /// Union of both kinds of conflict.
    pub fn vertices(&self) -> VertexSet {
        self.dead.union(&self.starved_vertices())
    }
}

pub fn find_conflicts(g: &GameGraph, t: &StrategyTemplate) -> ConflictReport {
    let w0 = &t.region;
    let mut dead = g.empty_set();
    for v in w0.iter() {
        if g.owner(v) != Player::Zero {
            continue;
        }
        let free = g
            .successors(v)
            .iter()
            .any(|&w| w0.contains(w) && !t.blocks(&Edge::new(v, w)));
        if !free {
            dead.insert(v);
        }
    }

    let mut starved = Vec::new();
    for (i, h) in t.live_groups.iter().enumerate() {
        for v in h.sources() {
            if !w0.contains(v) {
                continue;
            }
            let free = h.at(v).any(|e| w0.contains(e.target) && !t.blocks(e));
            if !free {
                starved.push((v, i));
            }
        }
    }
    starved.sort_unstable();
    ConflictReport { dead, starved }
}
