//! Game graphs with a two-player vertex partition.
//!
//! Vertices are dense indices into side arrays. Successor and predecessor
//! lists are stored in CSR form so fixpoint loops can walk them without
//! hashing.

use std::collections::BTreeSet;
use std::fmt;

use bitvec::order::Lsb0;
use bitvec::vec::BitVec;

use crate::error::GraphError;

/// Dense vertex index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn new(index: usize) -> Self {
        VertexId(index as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The two players. Player 0 is the protagonist whose strategies the
/// templates describe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Player {
    Zero,
    One,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Zero => Player::One,
            Player::One => Player::Zero,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Player::Zero => 0,
            Player::One => 1,
        }
    }

    pub fn from_index(index: usize) -> Option<Player> {
        match index {
            0 => Some(Player::Zero),
            1 => Some(Player::One),
            _ => None,
        }
    }

    /// The player that wins if `priority` is the maximal one seen infinitely often.
    pub fn from_priority(priority: u32) -> Player {
        if priority.is_multiple_of(2) {
            Player::Zero
        } else {
            Player::One
        }
    }
}

/// A directed edge `(source, target)`. Ordered lexicographically, which
/// gives edge sets a deterministic iteration order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: VertexId,
    pub target: VertexId,
}

impl Edge {
    pub fn new(source: VertexId, target: VertexId) -> Self {
        Edge { source, target }
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.source.0, self.target.0)
    }
}

/// A set of vertices of one graph, stored as a bitset over the vertex range.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: BitVec<usize, Lsb0>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            bits: BitVec::repeat(false, n),
        }
    }

    pub fn full(n: usize) -> Self {
        VertexSet {
            bits: BitVec::repeat(true, n),
        }
    }

    pub fn from_vertices(n: usize, vertices: impl IntoIterator<Item = VertexId>) -> Self {
        let mut set = VertexSet::empty(n);
        for v in vertices {
            set.insert(v);
        }
        set
    }

    /// Size of the universe this set lives in.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn contains(&self, v: VertexId) -> bool {
        self.bits.get(v.index()).map(|b| *b).unwrap_or(false)
    }

    /// Returns true if the vertex was not yet present.
    #[inline]
    pub fn insert(&mut self, v: VertexId) -> bool {
        let was = self.bits[v.index()];
        self.bits.set(v.index(), true);
        !was
    }

    #[inline]
    pub fn remove(&mut self, v: VertexId) -> bool {
        let was = self.bits[v.index()];
        self.bits.set(v.index(), false);
        was
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.not_any()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.bits.iter_ones().map(VertexId::new)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.universe(), other.universe());
        *self.bits.as_mut_bitslice() |= other.bits.as_bitslice();
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.universe(), other.universe());
        *self.bits.as_mut_bitslice() &= other.bits.as_bitslice();
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.universe(), other.universe());
        for v in other.bits.iter_ones() {
            self.bits.set(v, false);
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    /// Complement with respect to the whole universe.
    pub fn complement(&self) -> VertexSet {
        VertexSet {
            bits: !self.bits.clone(),
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn to_vec(&self) -> Vec<VertexId> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|v| v.0)).finish()
    }
}

/// A set of edges in `(source, target)` order.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct EdgeSet(BTreeSet<Edge>);

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet(BTreeSet::new())
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        self.0.insert(e)
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.0.contains(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.0.iter()
    }

    pub fn extend_from(&mut self, other: &EdgeSet) {
        self.0.extend(other.0.iter().copied());
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Edges leaving `source`.
    pub fn from_source(&self, source: VertexId) -> impl Iterator<Item = &Edge> + '_ {
        let lo = Edge::new(source, VertexId(0));
        let hi = Edge::new(source, VertexId(u32::MAX));
        self.0.range(lo..=hi)
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<T: IntoIterator<Item = Edge>>(iter: T) -> Self {
        EdgeSet(iter.into_iter().collect())
    }
}

impl Extend<Edge> for EdgeSet {
    fn extend<T: IntoIterator<Item = Edge>>(&mut self, iter: T) {
        self.0.extend(iter)
    }
}

impl<'a> IntoIterator for &'a EdgeSet {
    type Item = &'a Edge;
    type IntoIter = std::collections::btree_set::Iter<'a, Edge>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// A finite game graph. Immutable once built; every vertex has at least one
/// successor and successor lists have no duplicate targets.
#[derive(Clone, PartialEq, Eq)]
pub struct GameGraph {
    owner: Vec<Player>,
    succ_offsets: Vec<usize>,
    succ: Vec<VertexId>,
    pred_offsets: Vec<usize>,
    pred: Vec<VertexId>,
    names: Vec<Option<String>>,
}

impl fmt::Debug for GameGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("GameGraph");
        s.field("vertices", &self.vertex_count());
        s.field("edges", &self.edge_count());
        s.finish()
    }
}

impl GameGraph {
    pub fn vertex_count(&self) -> usize {
        self.owner.len()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + Clone {
        (0..self.vertex_count()).map(VertexId::new)
    }

    #[inline]
    pub fn owner(&self, v: VertexId) -> Player {
        self.owner[v.index()]
    }

    #[inline]
    pub fn successors(&self, v: VertexId) -> &[VertexId] {
        &self.succ[self.succ_offsets[v.index()]..self.succ_offsets[v.index() + 1]]
    }

    #[inline]
    pub fn predecessors(&self, v: VertexId) -> &[VertexId] {
        &self.pred[self.pred_offsets[v.index()]..self.pred_offsets[v.index() + 1]]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.succ_offsets[v.index() + 1] - self.succ_offsets[v.index()]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.successors(u).contains(&v)
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices()
            .flat_map(move |u| self.successors(u).iter().map(move |&v| Edge::new(u, v)))
    }

    pub fn name(&self, v: VertexId) -> Option<&str> {
        self.names[v.index()].as_deref()
    }

    /// Name if present, otherwise the numeric id.
    pub fn label(&self, v: VertexId) -> String {
        match self.name(v) {
            Some(name) => name.to_string(),
            None => v.0.to_string(),
        }
    }

    /// Looks a vertex up by name.
    pub fn find(&self, name: &str) -> Option<VertexId> {
        self.names
            .iter()
            .position(|n| n.as_deref() == Some(name))
            .map(VertexId::new)
    }

    pub fn players(&self, player: Player) -> VertexSet {
        VertexSet::from_vertices(
            self.vertex_count(),
            self.vertices().filter(|&v| self.owner(v) == player),
        )
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.vertex_count())
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn set_of(&self, vertices: impl IntoIterator<Item = VertexId>) -> VertexSet {
        VertexSet::from_vertices(self.vertex_count(), vertices)
    }

    /// Same graph with a different edge relation. Used to delete edges; the
    /// caller is responsible for keeping every vertex total.
    pub(crate) fn with_successors(
        &self,
        successors: Vec<Vec<VertexId>>,
    ) -> Result<GameGraph, GraphError> {
        let mut builder = GameGraphBuilder::new();
        for v in self.vertices() {
            builder.add_vertex_with_name(self.owner(v), self.names[v.index()].clone());
        }
        for (u, targets) in successors.into_iter().enumerate() {
            for t in targets {
                builder.add_edge(VertexId::new(u), t)?;
            }
        }
        builder.build()
    }
}

/// Accumulates vertices and edges before freezing them into a [`GameGraph`].
#[derive(Default, Clone, Debug)]
pub struct GameGraphBuilder {
    owner: Vec<Player>,
    names: Vec<Option<String>>,
    succ: Vec<Vec<VertexId>>,
}

impl GameGraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, owner: Player) -> VertexId {
        self.add_vertex_with_name(owner, None)
    }

    pub fn add_named_vertex(&mut self, owner: Player, name: impl Into<String>) -> VertexId {
        self.add_vertex_with_name(owner, Some(name.into()))
    }

    pub fn add_vertex_with_name(&mut self, owner: Player, name: Option<String>) -> VertexId {
        let id = VertexId::new(self.owner.len());
        self.owner.push(owner);
        self.names.push(name);
        self.succ.push(Vec::new());
        id
    }

    pub fn vertex_count(&self) -> usize {
        self.owner.len()
    }

    pub fn add_edge(&mut self, source: VertexId, target: VertexId) -> Result<(), GraphError> {
        let n = self.owner.len();
        for v in [source, target] {
            if v.index() >= n {
                return Err(GraphError::UnknownVertex(v.0));
            }
        }
        let list = &mut self.succ[source.index()];
        if list.contains(&target) {
            return Err(GraphError::DuplicateEdge(source.0, target.0));
        }
        list.push(target);
        Ok(())
    }

    pub fn build(self) -> Result<GameGraph, GraphError> {
        let n = self.owner.len();
        if let Some(dead) = self.succ.iter().position(|s| s.is_empty()) {
            return Err(GraphError::DeadEnd(dead as u32));
        }
        for name in self.names.iter().flatten() {
            if name.contains('"') || name.contains('\n') {
                return Err(GraphError::InvalidName(name.clone()));
            }
        }

        let mut succ_offsets = Vec::with_capacity(n + 1);
        let mut succ = Vec::new();
        succ_offsets.push(0);
        let mut in_degree = vec![0usize; n];
        for list in &self.succ {
            for t in list {
                in_degree[t.index()] += 1;
            }
            succ.extend_from_slice(list);
            succ_offsets.push(succ.len());
        }

        let mut pred_offsets = Vec::with_capacity(n + 1);
        pred_offsets.push(0);
        for d in &in_degree {
            pred_offsets.push(pred_offsets.last().unwrap() + d);
        }
        let mut fill = pred_offsets.clone();
        let mut pred = vec![VertexId(0); succ.len()];
        for (u, list) in self.succ.iter().enumerate() {
            for t in list {
                pred[fill[t.index()]] = VertexId::new(u);
                fill[t.index()] += 1;
            }
        }

        Ok(GameGraph {
            owner: self.owner,
            succ_offsets,
            succ,
            pred_offsets,
            pred,
            names: self.names,
        })
    }
}

/// Bijection between the vertices of a graph and those of a restriction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    old_to_new: Vec<Option<VertexId>>,
    new_to_old: Vec<VertexId>,
}

impl VertexMap {
    pub fn to_new(&self, old: VertexId) -> Option<VertexId> {
        self.old_to_new[old.index()]
    }

    pub fn to_old(&self, new: VertexId) -> VertexId {
        self.new_to_old[new.index()]
    }

    pub fn len(&self) -> usize {
        self.new_to_old.len()
    }

    pub fn is_empty(&self) -> bool {
        self.new_to_old.is_empty()
    }

    /// Lifts a set over the restricted graph back to the original one.
    pub fn lift(&self, set: &VertexSet) -> VertexSet {
        VertexSet::from_vertices(self.old_to_new.len(), set.iter().map(|v| self.to_old(v)))
    }

    /// Projects a set over the original graph onto the restricted one.
    pub fn project(&self, set: &VertexSet) -> VertexSet {
        VertexSet::from_vertices(
            self.new_to_old.len(),
            set.iter().filter_map(|v| self.to_new(v)),
        )
    }
}

/// Restriction of `g` to the vertices in `keep`, keeping the edges inside
/// `keep`. Fails if a kept vertex would be left without successors.
pub fn restrict(g: &GameGraph, keep: &VertexSet) -> Result<(GameGraph, VertexMap), GraphError> {
    let mut old_to_new = vec![None; g.vertex_count()];
    let mut new_to_old = Vec::with_capacity(keep.len());
    for v in keep.iter() {
        old_to_new[v.index()] = Some(VertexId::new(new_to_old.len()));
        new_to_old.push(v);
    }

    let mut builder = GameGraphBuilder::new();
    for &old in &new_to_old {
        builder.add_vertex_with_name(g.owner(old), g.names[old.index()].clone());
    }
    for &old in &new_to_old {
        let src = old_to_new[old.index()].unwrap();
        let mut any = false;
        for &t in g.successors(old) {
            if let Some(tgt) = old_to_new[t.index()] {
                builder.add_edge(src, tgt)?;
                any = true;
            }
        }
        if !any {
            return Err(GraphError::RestrictionDeadEnd(old.0));
        }
    }
    let graph = builder.build()?;
    Ok((
        graph,
        VertexMap {
            old_to_new,
            new_to_old,
        },
    ))
}

/// All edges `(u, v)` of `g` with `u` in `from` and `v` in `to`.
pub fn edges_between(g: &GameGraph, from: &VertexSet, to: &VertexSet) -> EdgeSet {
    from.iter()
        .flat_map(|u| {
            g.successors(u)
                .iter()
                .filter(|t| to.contains(**t))
                .map(move |&t| Edge::new(u, t))
        })
        .collect()
}

/// A priority function `V -> [0; d]` together with its declared bound `d`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PriorityFunction {
    priorities: Vec<u32>,
    max_priority: u32,
}

impl PriorityFunction {
    /// Declared bound is the largest priority present (0 for an empty graph).
    pub fn new(priorities: Vec<u32>) -> Self {
        let max_priority = priorities.iter().copied().max().unwrap_or(0);
        PriorityFunction {
            priorities,
            max_priority,
        }
    }

    pub fn with_bound(priorities: Vec<u32>, max_priority: u32) -> Result<Self, GraphError> {
        if let Some(&p) = priorities.iter().find(|&&p| p > max_priority) {
            return Err(GraphError::PriorityOutOfRange {
                priority: p,
                bound: max_priority,
            });
        }
        Ok(PriorityFunction {
            priorities,
            max_priority,
        })
    }

    /// Büchi objective: vertices in `goal` get 2, all others 1.
    pub fn buchi(goal: &VertexSet) -> Self {
        Self::new(
            (0..goal.universe())
                .map(|v| {
                    if goal.contains(VertexId::new(v)) {
                        2
                    } else {
                        1
                    }
                })
                .collect(),
        )
    }

    /// Co-Büchi objective: vertices in `stay` get 0, all others 1.
    pub fn cobuchi(stay: &VertexSet) -> Self {
        Self::new(
            (0..stay.universe())
                .map(|v| {
                    if stay.contains(VertexId::new(v)) {
                        0
                    } else {
                        1
                    }
                })
                .collect(),
        )
    }

    #[inline]
    pub fn priority(&self, v: VertexId) -> u32 {
        self.priorities[v.index()]
    }

    pub fn priorities(&self) -> &[u32] {
        &self.priorities
    }

    pub fn max_priority(&self) -> u32 {
        self.max_priority
    }

    pub fn len(&self) -> usize {
        self.priorities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.priorities.is_empty()
    }

    /// Same priorities with the declared bound raised to the next odd value
    /// if it is even, so that a "never again" priority `2d+1` exists.
    pub fn padded_odd(&self) -> Self {
        let max_priority = if self.max_priority.is_multiple_of(2) {
            self.max_priority + 1
        } else {
            self.max_priority
        };
        PriorityFunction {
            priorities: self.priorities.clone(),
            max_priority,
        }
    }

    /// Vertices with exactly priority `p`.
    pub fn vertices_with(&self, p: u32) -> VertexSet {
        VertexSet::from_vertices(
            self.priorities.len(),
            self.priorities
                .iter()
                .enumerate()
                .filter(|(_, &q)| q == p)
                .map(|(v, _)| VertexId::new(v)),
        )
    }

    pub fn restrict(&self, map: &VertexMap) -> Self {
        PriorityFunction {
            priorities: (0..map.len())
                .map(|v| self.priorities[map.to_old(VertexId::new(v)).index()])
                .collect(),
            max_priority: self.max_priority,
        }
    }

    /// Overrides the priority of a single vertex, raising the bound if needed.
    pub fn set(&mut self, v: VertexId, p: u32) {
        self.priorities[v.index()] = p;
        self.max_priority = self.max_priority.max(p);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::six;

    #[test]
    fn builder_rejects_dead_ends_and_duplicates() {
        let mut b = GameGraphBuilder::new();
        let a = b.add_vertex(Player::Zero);
        let c = b.add_vertex(Player::One);
        b.add_edge(a, c).unwrap();
        assert_eq!(b.add_edge(a, c), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(b.clone().build().unwrap_err(), GraphError::DeadEnd(1));
        b.add_edge(c, a).unwrap();
        let g = b.build().unwrap();
        assert_eq!(g.predecessors(a), &[c]);
    }

    #[test]
    fn restrict_six_to_abd() {
        let (g, v) = six();
        let keep = g.set_of([v.a, v.b, v.d]);
        let (h, map) = restrict(&g, &keep).unwrap();
        assert_eq!(h.vertex_count(), 3);
        let edges: Vec<(String, String)> = h
            .edges()
            .map(|e| (h.label(e.source), h.label(e.target)))
            .collect();
        let expect = [
            ("a", "a"),
            ("a", "b"),
            ("a", "d"),
            ("b", "a"),
            ("b", "d"),
            ("d", "a"),
            ("d", "b"),
        ];
        assert_eq!(
            edges,
            expect
                .iter()
                .map(|(x, y)| (x.to_string(), y.to_string()))
                .collect::<Vec<_>>()
        );
        assert_eq!(map.to_old(VertexId(2)), v.d);
        assert_eq!(map.to_new(v.c), None);
    }

    #[test]
    fn restrict_to_everything_is_identity() {
        let (g, _) = six();
        let (h, map) = restrict(&g, &g.full_set()).unwrap();
        assert_eq!(h, g);
        for v in g.vertices() {
            assert_eq!(map.to_new(v), Some(v));
        }
    }

    #[test]
    fn restrict_reports_dead_end() {
        let (g, v) = six();
        let err = restrict(&g, &g.set_of([v.e])).unwrap_err();
        assert_eq!(err, GraphError::RestrictionDeadEnd(v.e.0));
    }

    #[test]
    fn edges_between_examples() {
        let (g, v) = six();
        let e = |x: VertexId, y: VertexId| Edge::new(x, y);
        assert_eq!(
            edges_between(&g, &g.set_of([v.a]), &g.set_of([v.c, v.d])),
            [e(v.a, v.c), e(v.a, v.d)].into_iter().collect()
        );
        assert!(edges_between(&g, &g.empty_set(), &g.full_set()).is_empty());
        assert_eq!(
            edges_between(&g, &g.set_of([v.a, v.c, v.d]), &g.set_of([v.b, v.e, v.f])),
            [e(v.a, v.b), e(v.d, v.b), e(v.d, v.e)]
                .into_iter()
                .collect()
        );
        let all: EdgeSet = g.edges().collect();
        assert_eq!(edges_between(&g, &g.full_set(), &g.full_set()), all);
    }

    #[test]
    fn padding_makes_bound_odd() {
        let p = PriorityFunction::new(vec![0, 2, 1]);
        assert_eq!(p.max_priority(), 2);
        assert_eq!(p.padded_odd().max_priority(), 3);
        assert_eq!(p.padded_odd().padded_odd().max_priority(), 3);
        assert!(PriorityFunction::with_bound(vec![4], 3).is_err());
    }

    #[test]
    fn edge_set_source_range() {
        let set: EdgeSet = [(0, 1), (1, 0), (1, 2), (2, 2)]
            .into_iter()
            .map(|(a, b)| Edge::new(VertexId(a), VertexId(b)))
            .collect();
        let from1: Vec<_> = set.from_source(VertexId(1)).map(|e| e.target.0).collect();
        assert_eq!(from1, vec![0, 2]);
    }
}
