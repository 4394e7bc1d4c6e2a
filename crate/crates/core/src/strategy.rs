//! Strategy extraction from conflict-free templates and strategy verification.

use std::collections::VecDeque;

use crate::error::StrategyError;
use crate::graph::{Edge, GameGraph, Player, PriorityFunction, VertexId, VertexSet};
use crate::scc::{is_cyclic, tarjan};
use crate::template::{find_conflicts, StrategyTemplate};

/// A Player-0 strategy that cycles through a fixed list of moves at every
/// vertex. The cursor per vertex is its only memory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strategy {
    moves: Vec<Vec<VertexId>>,
    cursor: Vec<usize>,
}

impl Strategy {
    /// A strategy with no moves anywhere, over `n` vertices.
    pub fn empty(n: usize) -> Self {
        Strategy {
            moves: vec![Vec::new(); n],
            cursor: vec![0; n],
        }
    }

    /// Replaces the rotation at `v`.
    pub fn set_moves(&mut self, v: VertexId, targets: Vec<VertexId>) {
        self.moves[v.index()] = targets;
        self.cursor[v.index()] = 0;
    }

    pub fn moves(&self, v: VertexId) -> &[VertexId] {
        &self.moves[v.index()]
    }

    pub fn vertex_count(&self) -> usize {
        self.moves.len()
    }

    /// Vertices that have at least one move, ascending.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.moves
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_empty())
            .map(|(i, _)| VertexId::new(i))
    }

    pub fn domain(&self) -> VertexSet {
        VertexSet::from_vertices(self.moves.len(), self.vertices())
    }

    /// The move at `v` under the current cursor; advances the cursor.
    pub fn next_move(&mut self, v: VertexId) -> Option<VertexId> {
        let list = &self.moves[v.index()];
        if list.is_empty() {
            return None;
        }
        let c = &mut self.cursor[v.index()];
        let t = list[*c];
        *c = (*c + 1) % list.len();
        Some(t)
    }

    pub fn reset(&mut self) {
        self.cursor.iter_mut().for_each(|c| *c = 0);
    }
}

/// Allowed targets at every Player-0 vertex of `W0`: edges staying in `W0`
/// that are neither unsafe nor co-live. Live-group edges come first, in
/// group order, the rest follow by target index.
pub(crate) fn allowed_moves(g: &GameGraph, t: &StrategyTemplate) -> Vec<Vec<VertexId>> {
    let n = g.vertex_count();
    let w0 = &t.region;
    let ok = |e: &Edge| {
        g.owner(e.source) == Player::Zero
            && w0.contains(e.source)
            && w0.contains(e.target)
            && !t.blocks(e)
    };
    let mut moves: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for h in &t.live_groups {
        for e in h.edges() {
            if ok(e) {
                moves[e.source.index()].push(e.target);
            }
        }
    }
    let mut mark = vec![u32::MAX; n];
    let mut rest = Vec::new();
    for v in w0.iter() {
        if g.owner(v) != Player::Zero {
            continue;
        }
        let stamp = v.0;
        let list = &mut moves[v.index()];
        list.retain(|w| {
            let fresh = mark[w.index()] != stamp;
            mark[w.index()] = stamp;
            fresh
        });
        rest.clear();
        rest.extend(
            g.successors(v)
                .iter()
                .copied()
                .filter(|&w| mark[w.index()] != stamp && ok(&Edge::new(v, w))),
        );
        rest.sort_unstable();
        list.extend_from_slice(&rest);
    }
    moves
}

/// Fails with the conflict report if `t` is not conflict-free.
pub fn extract_strategy(g: &GameGraph, t: &StrategyTemplate) -> Result<Strategy, StrategyError> {
    let report = find_conflicts(g, t);
    if !report.is_empty() {
        return Err(StrategyError::Conflict(report));
    }
    let moves = allowed_moves(g, t);
    Ok(Strategy {
        cursor: vec![0; moves.len()],
        moves,
    })
}

/// A play `prefix · cycle^ω` violating objective `objective`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lasso {
    pub prefix: Vec<VertexId>,
    pub cycle: Vec<VertexId>,
    pub objective: usize,
}

impl Lasso {
    /// Highest priority on the cycle.
    pub fn cycle_max(&self, p: &PriorityFunction) -> u32 {
        self.cycle.iter().map(|&v| p.priority(v)).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductVerdict {
    pub winning_from: VertexSet,
    pub counterexample: Option<Lasso>,
}

impl ProductVerdict {
    pub fn is_winning(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Decides whether every play of `s` from `from` satisfies all objectives.
///
/// A rotating cursor takes every move of a vertex visited infinitely often
/// infinitely often, so the set of vertices seen infinitely often in a play
/// is a strongly connected set closed under the moves of its Player-0
/// vertices. Conversely Player 1 can realise any such reachable set. The
/// verifier searches for one whose top priority is odd for some objective.
pub fn verify_strategy(
    g: &GameGraph,
    s: &Strategy,
    objectives: &[PriorityFunction],
    from: &VertexSet,
) -> Result<ProductVerdict, StrategyError> {
    for p in objectives {
        if p.len() != g.vertex_count() {
            return Err(StrategyError::PriorityArity {
                expected: g.vertex_count(),
                got: p.len(),
            });
        }
    }
    let play = PlayGraph::new(g, s);
    let reach = play.reachable(from)?;

    let mut cores: Vec<(usize, Vec<VertexId>)> = Vec::new();
    for (i, p) in objectives.iter().enumerate() {
        for core in play.odd_cores(&reach, p) {
            cores.push((i, core));
        }
    }
    if cores.is_empty() {
        return Ok(ProductVerdict {
            winning_from: from.clone(),
            counterexample: None,
        });
    }

    let mut bad = VertexSet::empty(g.vertex_count());
    for (_, core) in &cores {
        for &v in core {
            bad.insert(v);
        }
    }
    let losing = play.backward_closure(&reach, &bad);
    let winning_from = from.difference(&losing);
    let start = from
        .iter()
        .find(|&v| losing.contains(v))
        .expect("a reachable bad core implies a losing start vertex");
    let lasso = play.lasso(start, &cores, objectives);
    Ok(ProductVerdict {
        winning_from,
        counterexample: Some(lasso),
    })
}

/// The graph of plays: Player-0 vertices use their moves, Player-1
/// vertices all their edges.
pub(crate) struct PlayGraph<'a> {
    g: &'a GameGraph,
    s: &'a Strategy,
}

impl<'a> PlayGraph<'a> {
    pub(crate) fn new(g: &'a GameGraph, s: &'a Strategy) -> Self {
        PlayGraph { g, s }
    }

    fn next(&self, v: VertexId) -> &[VertexId] {
        match self.g.owner(v) {
            Player::Zero => self.s.moves(v),
            Player::One => self.g.successors(v),
        }
    }

    fn reachable(&self, from: &VertexSet) -> Result<VertexSet, StrategyError> {
        let mut seen = from.clone();
        let mut queue: Vec<VertexId> = from.iter().collect();
        while let Some(v) = queue.pop() {
            let next = self.next(v);
            if next.is_empty() {
                return Err(StrategyError::MissingMove(v.0));
            }
            for &w in next {
                if seen.insert(w) {
                    queue.push(w);
                }
            }
        }
        Ok(seen)
    }

    fn local_adj(
        &self,
        members: &[VertexId],
        inside: &VertexSet,
        local: &mut [u32],
    ) -> Vec<Vec<u32>> {
        for (i, v) in members.iter().enumerate() {
            local[v.index()] = i as u32;
        }
        members
            .iter()
            .map(|&v| {
                self.next(v)
                    .iter()
                    .filter(|w| inside.contains(**w))
                    .map(|w| local[w.index()])
                    .collect()
            })
            .collect()
    }

    /// Maximal sets in which Player 1 can keep a fair play forever while
    /// the top priority of `p` is odd.
    fn odd_cores(&self, reach: &VertexSet, p: &PriorityFunction) -> Vec<Vec<VertexId>> {
        let n = self.g.vertex_count();
        let mut local = vec![0u32; n];
        let mut out = Vec::new();
        let mut work: Vec<Vec<VertexId>> = vec![reach.iter().collect()];
        while let Some(cand) = work.pop() {
            let inside = VertexSet::from_vertices(n, cand.iter().copied());
            let adj = self.local_adj(&cand, &inside, &mut local);
            for comp in tarjan(&adj) {
                if !is_cyclic(&adj, &comp) {
                    continue;
                }
                let k: Vec<VertexId> = comp.iter().map(|&i| cand[i as usize]).collect();
                let in_k = VertexSet::from_vertices(n, k.iter().copied());
                let leaking: Vec<bool> = k
                    .iter()
                    .map(|&v| {
                        self.g.owner(v) == Player::Zero
                            && self.s.moves(v).iter().any(|w| !in_k.contains(*w))
                    })
                    .collect();
                if leaking.iter().any(|&x| x) {
                    let rest: Vec<VertexId> = k
                        .iter()
                        .zip(&leaking)
                        .filter(|(_, &l)| !l)
                        .map(|(&v, _)| v)
                        .collect();
                    if !rest.is_empty() {
                        work.push(rest);
                    }
                    continue;
                }
                let top = k.iter().map(|&v| p.priority(v)).max().unwrap_or(0);
                if top % 2 == 1 {
                    out.push(k);
                } else {
                    let rest: Vec<VertexId> =
                        k.into_iter().filter(|&v| p.priority(v) != top).collect();
                    if !rest.is_empty() {
                        work.push(rest);
                    }
                }
            }
        }
        out
    }

    /// Vertices of `reach` with a path into `target`.
    fn backward_closure(&self, reach: &VertexSet, target: &VertexSet) -> VertexSet {
        let n = self.g.vertex_count();
        let mut rev: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        for v in reach.iter() {
            for &w in self.next(v) {
                rev[w.index()].push(v);
            }
        }
        let mut seen = target.clone();
        let mut queue: Vec<VertexId> = target.iter().collect();
        while let Some(w) = queue.pop() {
            for &v in &rev[w.index()] {
                if seen.insert(v) {
                    queue.push(v);
                }
            }
        }
        seen
    }

    /// Shortest path from `start` to a vertex satisfying `goal`, staying in
    /// `within`. The path includes both ends.
    fn path(
        &self,
        start: VertexId,
        within: &VertexSet,
        goal: impl Fn(VertexId) -> bool,
        skip_start: bool,
    ) -> Option<Vec<VertexId>> {
        let n = self.g.vertex_count();
        let mut parent: Vec<Option<VertexId>> = vec![None; n];
        let mut seen = VertexSet::empty(n);
        let mut queue = VecDeque::new();
        if !skip_start && goal(start) {
            return Some(vec![start]);
        }
        seen.insert(start);
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &w in self.next(v) {
                if !within.contains(w) {
                    continue;
                }
                if goal(w) {
                    let mut out = vec![w, v];
                    let mut cur = v;
                    while let Some(p) = parent[cur.index()] {
                        out.push(p);
                        cur = p;
                    }
                    out.reverse();
                    return Some(out);
                }
                if seen.insert(w) {
                    parent[w.index()] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        None
    }

    fn lasso(
        &self,
        start: VertexId,
        cores: &[(usize, Vec<VertexId>)],
        objectives: &[PriorityFunction],
    ) -> Lasso {
        let n = self.g.vertex_count();
        let everywhere = VertexSet::full(n);
        let mut best: Option<(Vec<VertexId>, usize)> = None;
        for (ci, (obj, core)) in cores.iter().enumerate() {
            let p = &objectives[*obj];
            let top = core.iter().map(|&v| p.priority(v)).max().unwrap_or(0);
            let anchor = *core
                .iter()
                .find(|&&v| p.priority(v) == top)
                .expect("cores are non-empty");
            if let Some(path) = self.path(start, &everywhere, |v| v == anchor, false) {
                if best.as_ref().is_none_or(|(b, _)| path.len() < b.len()) {
                    best = Some((path, ci));
                }
            }
        }
        let (mut prefix, ci) = best.expect("start reaches some core");
        let (objective, core) = &cores[ci];
        let anchor = prefix.pop().expect("path ends at the anchor");
        let in_core = VertexSet::from_vertices(n, core.iter().copied());
        let mut cycle = self
            .path(anchor, &in_core, |v| v == anchor, true)
            .expect("cores are strongly connected and cyclic");
        cycle.pop();
        Lasso {
            prefix,
            cycle,
            objective: *objective,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::six;
    use crate::solvers::{buchi_template, cobuchi_template, safety_template};
    use crate::template::conjoin;

    #[test]
    fn six_buchi_strategy_alternates() {
        let (g, v) = six();
        let goal = g.set_of([v.c, v.d]);
        let t = buchi_template(&g, &goal).unwrap().template;
        let mut s = extract_strategy(&g, &t).unwrap();
        assert_eq!(&s.moves(v.a)[..2], &[v.c, v.d]);
        assert_eq!(s.moves(v.a), &[v.c, v.d, v.a, v.b]);
        let seq: Vec<VertexId> = (0..5).map(|_| s.next_move(v.a).unwrap()).collect();
        assert_eq!(seq, vec![v.c, v.d, v.a, v.b, v.c]);
        let verdict =
            verify_strategy(&g, &s, &[PriorityFunction::buchi(&goal)], &g.full_set()).unwrap();
        assert!(verdict.is_winning());
        assert_eq!(verdict.winning_from, g.full_set());
    }

    #[test]
    fn fixed_move_loses_buchi() {
        let (g, v) = six();
        let mut s = Strategy::empty(g.vertex_count());
        s.set_moves(v.a, vec![v.b]);
        s.set_moves(v.d, vec![v.a]);
        let p = PriorityFunction::buchi(&g.set_of([v.c, v.d]));
        let verdict = verify_strategy(&g, &s, std::slice::from_ref(&p), &g.set_of([v.a])).unwrap();
        assert!(verdict.winning_from.is_empty());
        let lasso = verdict.counterexample.unwrap();
        assert_eq!(lasso.cycle_max(&p) % 2, 1);
        assert!(lasso.cycle.contains(&v.a) && lasso.cycle.contains(&v.b));
    }

    #[test]
    fn empty_template_allows_everything() {
        let (g, v) = six();
        let s = extract_strategy(&g, &StrategyTemplate::trivial(&g)).unwrap();
        assert_eq!(s.moves(v.a), &[v.a, v.b, v.c, v.d]);
        assert_eq!(s.moves(v.d), &[v.a, v.b, v.e]);
        assert!(s.moves(v.b).is_empty());
        let zero = PriorityFunction::new(vec![0; 6]);
        assert!(verify_strategy(&g, &s, &[zero], &g.full_set())
            .unwrap()
            .is_winning());
    }

    #[test]
    fn conjunction_of_three() {
        let (g, v) = six();
        let mut safe = g.full_set();
        safe.remove(v.f);
        let stay = g.set_of([v.a, v.c, v.d, v.e, v.f]);
        let goal = g.set_of([v.c, v.d]);
        let t = conjoin(
            &conjoin(
                &safety_template(&g, &safe).template,
                &buchi_template(&g, &goal).unwrap().template,
            ),
            &cobuchi_template(&g, &stay).template,
        );
        let s = extract_strategy(&g, &t).unwrap();
        assert_eq!(s.moves(v.d), &[v.a]);
        assert_eq!(s.moves(v.a), &[v.c, v.d, v.a]);
        let objectives = [
            PriorityFunction::cobuchi(&safe),
            PriorityFunction::buchi(&goal),
            PriorityFunction::cobuchi(&stay),
        ];
        let from = t.region.clone();
        let verdict = verify_strategy(&g, &s, &objectives, &from).unwrap();
        assert!(verdict.is_winning());
    }

    #[test]
    fn conflicting_template_rejected() {
        let (g, v) = six();
        let t = StrategyTemplate {
            colive: [v.a, v.b, v.c, v.d]
                .iter()
                .map(|&w| Edge::new(v.a, w))
                .collect(),
            ..StrategyTemplate::trivial(&g)
        };
        match extract_strategy(&g, &t) {
            Err(StrategyError::Conflict(r)) => assert_eq!(r.dead, g.set_of([v.a])),
            other => panic!("expected conflict, got {other:?}"),
        }
    }

    #[test]
    fn missing_move_reported() {
        let (g, v) = six();
        let s = Strategy::empty(g.vertex_count());
        let zero = PriorityFunction::new(vec![0; 6]);
        assert_eq!(
            verify_strategy(&g, &s, &[zero], &g.set_of([v.a])),
            Err(StrategyError::MissingMove(v.a.0))
        );
    }
}
