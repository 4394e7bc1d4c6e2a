//! Composition of templates for conjunctions of parity objectives.

use crate::error::SolveError;
use crate::graph::{EdgeSet, GameGraph, Player, PriorityFunction, VertexSet};
use crate::solvers::{parity_template_within, SolveResult};
use crate::template::{find_conflicts, LiveGroup, StrategyTemplate};
use crate::transformers::attr_within;

/// Sets every vertex of `u` to the top odd priority of `p`. The declared
/// maximum is first padded to an odd value.
pub fn relabel(p: &PriorityFunction, u: &VertexSet) -> PriorityFunction {
    let mut out = p.padded_odd();
    let top = out.max_priority();
    for v in u.iter() {
        out.set(v, top);
    }
    out
}

/// What a composition run carries over to the next one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComposeState {
    pub region: VertexSet,
    pub live_groups: Vec<LiveGroup>,
    pub colive: EdgeSet,
    /// Objectives seen so far, with every relabeling applied.
    pub objectives: Vec<PriorityFunction>,
    /// Conflict rounds over the lifetime of the state.
    pub rounds: usize,
}

impl ComposeState {
    /// No objectives yet; every vertex is winning.
    pub fn new(g: &GameGraph) -> Self {
        ComposeState {
            region: g.full_set(),
            live_groups: Vec::new(),
            colive: EdgeSet::new(),
            objectives: Vec::new(),
            rounds: 0,
        }
    }

    /// The composed template, with unsafe edges leaving the region.
    pub fn template(&self, g: &GameGraph) -> StrategyTemplate {
        let mut t = StrategyTemplate {
            unsafe_edges: crate::solvers::player0_edges(g, &self.region, &self.region.complement()),
            colive: self.colive.clone(),
            live_groups: Vec::new(),
            region: self.region.clone(),
        };
        t.push_groups(self.live_groups.iter().cloned());
        t
    }
}

/// The largest Player-1 trap inside `keep`, computed within `domain`.
/// `domain` must itself be a trap.
fn trim(g: &GameGraph, domain: &VertexSet, keep: &VertexSet) -> VertexSet {
    let out = domain.difference(keep);
    domain.difference(&attr_within(g, domain, &out, Player::One))
}

/// Lexicographic progress measure: region size, then the number of
/// (objective, vertex) pairs not yet at the top odd priority.
fn measure(domain: &VertexSet, objectives: &[PriorityFunction]) -> (usize, usize) {
    let pending = objectives
        .iter()
        .map(|p| {
            domain
                .iter()
                .filter(|&v| p.priority(v) != p.max_priority())
                .count()
        })
        .sum();
    (domain.len(), pending)
}

fn solve_all(
    g: &GameGraph,
    objectives: &[PriorityFunction],
    which: &[usize],
    domain: &VertexSet,
    jobs: usize,
) -> Result<Vec<SolveResult>, SolveError> {
    if jobs <= 1 || which.len() <= 1 {
        return which
            .iter()
            .map(|&i| parity_template_within(g, &objectives[i], domain))
            .collect();
    }
    let chunk = which.len().div_ceil(jobs);
    std::thread::scope(|scope| {
        let handles: Vec<_> = which
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    part.iter()
                        .map(|&i| parity_template_within(g, &objectives[i], domain))
                        .collect::<Result<Vec<_>, _>>()
                })
            })
            .collect();
        let mut out = Vec::with_capacity(which.len());
        for h in handles {
            out.extend(h.join().expect("solver thread panicked")?);
        }
        Ok(out)
    })
}

/// Adds `new` to the objectives of `state` and returns the updated state
/// with a conflict-free template winning for all of them from its region.
pub fn compose_templates(
    g: &GameGraph,
    state: ComposeState,
    new: &[PriorityFunction],
) -> Result<(ComposeState, StrategyTemplate), SolveError> {
    compose_templates_with(g, state, new, 1)
}

/// [`compose_templates`] solving up to `jobs` objectives in parallel.
pub fn compose_templates_with(
    g: &GameGraph,
    state: ComposeState,
    new: &[PriorityFunction],
    jobs: usize,
) -> Result<(ComposeState, StrategyTemplate), SolveError> {
    for p in new {
        if p.len() != g.vertex_count() {
            return Err(SolveError::PriorityArity {
                expected: g.vertex_count(),
                got: p.len(),
            });
        }
    }
    let ComposeState {
        region,
        mut live_groups,
        mut colive,
        mut objectives,
        mut rounds,
    } = state;
    let first_new = objectives.len();
    objectives.extend(new.iter().map(PriorityFunction::padded_odd));
    let mut pending: Vec<usize> = (first_new..objectives.len()).collect();
    let mut domain = trim(g, &g.full_set(), &region);

    loop {
        let mut next = domain.clone();
        for r in solve_all(g, &objectives, &pending, &domain, jobs)? {
            next.intersect_with(&r.region0);
            colive.extend_from(&r.template.colive);
            for h in r.template.live_groups {
                if !live_groups.contains(&h) {
                    live_groups.push(h);
                }
            }
        }
        if next != domain {
            domain = next;
            live_groups.clear();
            colive = EdgeSet::new();
            pending = (0..objectives.len()).collect();
            continue;
        }
        let candidate = StrategyTemplate {
            unsafe_edges: EdgeSet::new(),
            colive: colive.clone(),
            live_groups: live_groups.clone(),
            region: next.clone(),
        };
        let conflicts = find_conflicts(g, &candidate).vertices();
        if conflicts.is_empty() {
            let state = ComposeState {
                region: next,
                live_groups,
                colive,
                objectives,
                rounds,
            };
            let template = state.template(g);
            return Ok((state, template));
        }

        rounds += 1;
        let before = measure(&domain, &objectives);
        for p in objectives.iter_mut() {
            *p = relabel(p, &conflicts);
        }
        let mut shrunk = trim(g, &domain, &next);
        if measure(&shrunk, &objectives) >= before {
            shrunk = trim(g, &domain, &next.difference(&conflicts));
        }
        let after = measure(&shrunk, &objectives);
        assert!(
            after < before,
            "compose measure did not decrease: {before:?} -> {after:?}"
        );
        domain = shrunk;
        live_groups.clear();
        colive = EdgeSet::new();
        pending = (0..objectives.len()).collect();
    }
}

/// Composes `p` onto an existing state. Equivalent to calling
/// [`compose_templates`] with a single objective.
pub fn add_objective(
    g: &GameGraph,
    state: ComposeState,
    p: &PriorityFunction,
) -> Result<(ComposeState, StrategyTemplate), SolveError> {
    compose_templates(g, state, std::slice::from_ref(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{eight, six, six_parity};
    use crate::graph::Edge;
    use crate::solvers::parity_template;

    #[test]
    fn relabel_examples() {
        let (g, v) = six();
        let p = six_parity();
        assert_eq!(relabel(&p, &g.empty_set()).priorities(), p.priorities());
        let r = relabel(&p, &g.set_of([v.a, v.d]));
        assert_eq!(r.priorities(), &[3, 2, 1, 3, 1, 1]);
        assert_eq!(r.max_priority(), 3);
    }

    #[test]
    fn single_objective_matches_parity_template() {
        let (g, p, _) = eight();
        let (state, t) =
            compose_templates(&g, ComposeState::new(&g), std::slice::from_ref(&p)).unwrap();
        let direct = parity_template(&g, &p).unwrap();
        assert_eq!(state.region, direct.region0);
        assert_eq!(t, direct.template);
        assert_eq!(state.rounds, 0);
    }

    #[test]
    fn six_incompleteness() {
        let (g, v) = six();
        let avoid_b = PriorityFunction::cobuchi(&g.set_of([v.a, v.c, v.d, v.e, v.f]));
        let objectives = [avoid_b.clone(), six_parity()];
        let (state, t) = compose_templates(&g, ComposeState::new(&g), &objectives).unwrap();
        assert!(state.region.is_empty());
        assert!(t.region.is_empty());
        assert!(state.rounds >= 1);
        let (s1, _) = add_objective(&g, ComposeState::new(&g), &avoid_b).unwrap();
        assert_eq!(s1.region, g.full_set());
        let (s2, _) = add_objective(&g, s1, &six_parity()).unwrap();
        assert!(s2.region.is_empty());
    }

    #[test]
    fn six_three_objectives() {
        let (g, v) = six();
        let mut safe = g.full_set();
        safe.remove(v.f);
        let objectives = [
            PriorityFunction::new(
                g.vertices()
                    .map(|x| if safe.contains(x) { 0 } else { 1 })
                    .collect(),
            ),
            PriorityFunction::buchi(&g.set_of([v.c, v.d])),
            PriorityFunction::cobuchi(&g.set_of([v.a, v.c, v.d, v.e, v.f])),
        ];
        let (state, t) = compose_templates(&g, ComposeState::new(&g), &objectives).unwrap();
        assert_eq!(state.region, g.full_set());
        assert!(t.is_conflict_free(&g));
        assert!(t.colive.contains(&Edge::new(v.d, v.b)));
    }

    #[test]
    fn shrinking_region_is_solved_again_before_conflicts() {
        let mut b = crate::graph::GameGraphBuilder::new();
        let x = b.add_vertex(Player::One);
        let y = b.add_vertex(Player::Zero);
        for (s, t) in [(x, x), (x, y), (y, x), (y, y)] {
            b.add_edge(s, t).unwrap();
        }
        let g = b.build().unwrap();
        let objectives = [
            PriorityFunction::new(vec![1, 0]),
            PriorityFunction::new(vec![2, 0]),
        ];
        let (one_shot, t) = compose_templates(&g, ComposeState::new(&g), &objectives).unwrap();
        assert_eq!(one_shot.region, g.set_of([y]));
        assert_eq!(one_shot.rounds, 0);
        assert!(t.unsafe_edges.contains(&Edge::new(y, x)));
        let (s1, _) = add_objective(&g, ComposeState::new(&g), &objectives[0]).unwrap();
        let (s2, _) = add_objective(&g, s1, &objectives[1]).unwrap();
        assert_eq!(s2.region, one_shot.region);
    }

    #[test]
    fn parallel_matches_sequential() {
        let (g, v) = six();
        let objectives = [
            PriorityFunction::buchi(&g.set_of([v.c, v.d])),
            PriorityFunction::cobuchi(&g.set_of([v.a, v.c, v.d, v.e, v.f])),
            six_parity(),
        ];
        let a = compose_templates(&g, ComposeState::new(&g), &objectives).unwrap();
        let b = compose_templates_with(&g, ComposeState::new(&g), &objectives, 3).unwrap();
        assert_eq!(a, b);
    }
}
