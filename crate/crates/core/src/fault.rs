//! Templates under faulty Player-0 edges.

use std::collections::{HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{SolveError, StrategyError};
use crate::graph::{Edge, EdgeSet, GameGraph, Player, PriorityFunction, VertexId, VertexSet};
use crate::scc::{is_cyclic, tarjan};
use crate::solvers::parity_template;
use crate::strategy::allowed_moves;
use crate::template::{find_conflicts, StrategyTemplate};

/// `g` without the edges in `faulty`. A vertex left without successors
/// gets a self-loop and the top odd priority, so it is losing for Player 0.
pub fn delete_edges(
    g: &GameGraph,
    p: &PriorityFunction,
    faulty: &EdgeSet,
) -> Result<(GameGraph, PriorityFunction), SolveError> {
    let mut p = p.padded_odd();
    let top = p.max_priority();
    let mut succ = Vec::with_capacity(g.vertex_count());
    for v in g.vertices() {
        let mut list: Vec<VertexId> = g
            .successors(v)
            .iter()
            .copied()
            .filter(|&w| !faulty.contains(&Edge::new(v, w)))
            .collect();
        if list.is_empty() {
            list.push(v);
            p.set(v, top);
        }
        succ.push(list);
    }
    Ok((g.with_successors(succ)?, p))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaultCorrection {
    pub template: StrategyTemplate,
    /// Whether the template had to be recomputed on the reduced graph.
    pub recomputed: bool,
}

/// Marks `faulty` unsafe; if that causes a conflict, re-solves the game
/// with the faulty edges deleted.
pub fn fault_correction(
    g: &GameGraph,
    p: &PriorityFunction,
    t: &StrategyTemplate,
    faulty: &EdgeSet,
) -> Result<FaultCorrection, SolveError> {
    let mut quick = t.clone();
    quick.unsafe_edges.extend_from(faulty);
    if find_conflicts(g, &quick).is_empty() {
        return Ok(FaultCorrection {
            template: quick,
            recomputed: false,
        });
    }
    let (reduced, rp) = delete_edges(g, p, faulty)?;
    let mut template = parity_template(&reduced, &rp)?.template;
    for e in faulty {
        if template.region.contains(e.source) {
            template.unsafe_edges.insert(*e);
        }
    }
    Ok(FaultCorrection {
        template,
        recomputed: true,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GafReport {
    pub tolerant: bool,
    /// Player-0 vertices of `W0` whose every edge is blocked or faulty.
    pub offending: VertexSet,
}

/// Sufficient condition for following `t` when faulty edges are available
/// infinitely often: every Player-0 vertex of `W0` keeps an edge that the
/// template allows and that is not faulty.
pub fn gaf_tolerant(g: &GameGraph, t: &StrategyTemplate, faulty: &EdgeSet) -> GafReport {
    let mut offending = g.empty_set();
    for v in t.region.iter() {
        if g.owner(v) != Player::Zero {
            continue;
        }
        let ok = g.successors(v).iter().any(|&w| {
            let e = Edge::new(v, w);
            !t.blocks(&e) && !faulty.contains(&e)
        });
        if !ok {
            offending.insert(v);
        }
    }
    GafReport {
        tolerant: offending.is_empty(),
        offending,
    }
}

/// A controller that only plays edges currently available. Each vertex
/// keeps its allowed edges in a queue and plays the first available one,
/// which then moves to the back. With every edge always available this is
/// the round-robin strategy of [`crate::strategy::extract_strategy`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OnlineStrategy {
    queues: Vec<VecDeque<VertexId>>,
}

impl OnlineStrategy {
    pub fn new(g: &GameGraph, t: &StrategyTemplate) -> Self {
        OnlineStrategy {
            queues: allowed_moves(g, t)
                .into_iter()
                .map(VecDeque::from)
                .collect(),
        }
    }

    /// Allowed targets at `v` in current queue order.
    pub fn queue(&self, v: VertexId) -> impl Iterator<Item = &VertexId> + '_ {
        self.queues[v.index()].iter()
    }

    pub fn next_move(
        &mut self,
        v: VertexId,
        available: impl Fn(Edge) -> bool,
    ) -> Result<VertexId, StrategyError> {
        let q = &mut self.queues[v.index()];
        let pos = q
            .iter()
            .position(|&w| available(Edge::new(v, w)))
            .ok_or(StrategyError::NoAvailableEdge(v.0))?;
        let w = q.remove(pos).expect("position is in range");
        q.push_back(w);
        Ok(w)
    }
}

/// Edge availability repeating with a fixed period: at step `i` the edges
/// in `unavailable[i % period]` cannot be used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicTrace {
    pub unavailable: Vec<EdgeSet>,
}

impl PeriodicTrace {
    pub fn period(&self) -> usize {
        self.unavailable.len().max(1)
    }

    pub fn available(&self, step: usize, e: Edge) -> bool {
        self.unavailable
            .get(step % self.period())
            .is_none_or(|u| !u.contains(&e))
    }
}

pub const PERIODIC_STATE_LIMIT: usize = 1 << 20;

/// Explores every play of the online strategy from `from` under `trace`
/// and reports whether all of them satisfy `p`. A state pairs the vertex
/// and the queues with the step modulo the period.
pub fn check_online_periodic(
    g: &GameGraph,
    t: &StrategyTemplate,
    trace: &PeriodicTrace,
    p: &PriorityFunction,
    from: &VertexSet,
) -> Result<bool, StrategyError> {
    type State = (VertexId, usize, OnlineStrategy);
    let period = trace.period();
    let start = OnlineStrategy::new(g, t);
    let mut index: HashMap<State, u32> = HashMap::new();
    let mut states: Vec<State> = Vec::new();
    let mut adj: Vec<Vec<u32>> = Vec::new();
    let mut intern = |s: State,
                      states: &mut Vec<State>,
                      adj: &mut Vec<Vec<u32>>|
     -> Result<u32, StrategyError> {
        if let Some(&i) = index.get(&s) {
            return Ok(i);
        }
        if states.len() >= PERIODIC_STATE_LIMIT {
            return Err(StrategyError::ProductTooLarge(PERIODIC_STATE_LIMIT));
        }
        let i = states.len() as u32;
        index.insert(s.clone(), i);
        states.push(s);
        adj.push(Vec::new());
        Ok(i)
    };
    for v in from.iter() {
        intern((v, 0, start.clone()), &mut states, &mut adj)?;
    }
    let mut next = 0;
    while next < states.len() {
        let (v, step, ref strat) = states[next].clone();
        let succ: Vec<State> = match g.owner(v) {
            Player::Zero => {
                let mut s = strat.clone();
                let w = s.next_move(v, |e| trace.available(step, e))?;
                vec![(w, (step + 1) % period, s)]
            }
            Player::One => g
                .successors(v)
                .iter()
                .map(|&w| (w, (step + 1) % period, strat.clone()))
                .collect(),
        };
        for s in succ {
            let j = intern(s, &mut states, &mut adj)?;
            adj[next].push(j);
        }
        next += 1;
    }

    let prio: Vec<u32> = states.iter().map(|(v, _, _)| p.priority(*v)).collect();
    let mut odd: Vec<u32> = prio.iter().copied().filter(|q| q % 2 == 1).collect();
    odd.sort_unstable();
    odd.dedup();
    for q in odd {
        let keep: Vec<bool> = prio.iter().map(|&x| x <= q).collect();
        let local: Vec<Vec<u32>> = adj
            .iter()
            .enumerate()
            .map(|(i, out)| {
                if keep[i] {
                    out.iter().copied().filter(|&j| keep[j as usize]).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        for comp in tarjan(&local) {
            if !keep[comp[0] as usize] || !is_cyclic(&local, &comp) {
                continue;
            }
            if comp.iter().any(|&i| prio[i as usize] == q) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FaultStats {
    pub fault_fraction: f64,
    pub trials: usize,
    /// Fraction of trials in which the template had a conflict.
    pub conflict_rate: f64,
    /// Conflicting vertices over all vertices, averaged over all trials.
    pub mean_conflict_vertex_fraction: f64,
}

/// Player-0 edges of `g`.
fn player0_edges(g: &GameGraph) -> Vec<Edge> {
    g.edges()
        .filter(|e| g.owner(e.source) == Player::Zero)
        .collect()
}

/// Number of faulty edges drawn for a fraction of `total` edges.
pub fn fault_count(fraction: f64, total: usize) -> usize {
    ((fraction * total as f64).ceil() as usize).min(total)
}

/// Marks a random share of the Player-0 edges faulty and checks `t` for
/// conflicts. Trial `i` shuffles the edges with the stream `i` of a
/// generator seeded by `seed` and takes a prefix, so for fixed `seed` the
/// faulty sets grow with `fraction`.
pub fn simulate_fault_conflicts(
    g: &GameGraph,
    t: &StrategyTemplate,
    fraction: f64,
    trials: usize,
    seed: u64,
) -> FaultStats {
    assert!(
        (0.0..=1.0).contains(&fraction),
        "fault fraction out of range"
    );
    let edges = player0_edges(g);
    let k = fault_count(fraction, edges.len());
    let n = g.vertex_count().max(1) as f64;
    let mut conflicted = 0usize;
    let mut fraction_sum = 0.0;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let mut order = edges.clone();
        order.shuffle(&mut rng);
        let mut faulty = t.clone();
        faulty.unsafe_edges.extend(order[..k].iter().copied());
        let c = find_conflicts(g, &faulty).vertices().len();
        if c > 0 {
            conflicted += 1;
        }
        fraction_sum += c as f64 / n;
    }
    let denom = trials.max(1) as f64;
    FaultStats {
        fault_fraction: fraction,
        trials,
        conflict_rate: conflicted as f64 / denom,
        mean_conflict_vertex_fraction: fraction_sum / denom,
    }
}

/// Random parity games for [`fault_benchmark`].
#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub games: usize,
    pub vertices: usize,
    pub edges: usize,
    pub max_priority: u32,
    pub fractions: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
}

/// Averages [`simulate_fault_conflicts`] over `games` generated games, one
/// row per fraction. Game `i` is generated from `seed + i`.
pub fn fault_benchmark(config: &BenchConfig) -> Result<Vec<FaultStats>, SolveError> {
    let mut sums = vec![(0.0, 0.0); config.fractions.len()];
    for i in 0..config.games {
        let game = crate::generate::generate(&crate::generate::GeneratorConfig {
            base: None,
            vertices: config.vertices,
            edges: config.edges,
            objectives: 1,
            max_priority: config.max_priority,
            seed: config.seed.wrapping_add(i as u64),
        });
        let t = parity_template(&game.graph, &game.objectives[0])?.template;
        for (j, &f) in config.fractions.iter().enumerate() {
            let s =
                simulate_fault_conflicts(&game.graph, &t, f, config.trials, config.seed ^ i as u64);
            sums[j].0 += s.conflict_rate;
            sums[j].1 += s.mean_conflict_vertex_fraction;
        }
    }
    let games = config.games.max(1) as f64;
    Ok(config
        .fractions
        .iter()
        .zip(sums)
        .map(|(&f, (rate, frac))| FaultStats {
            fault_fraction: f,
            trials: config.trials * config.games,
            conflict_rate: rate / games,
            mean_conflict_vertex_fraction: frac / games,
        })
        .collect())
}

pub fn stats_csv(rows: &[FaultStats]) -> String {
    let mut out = String::from("faultFraction,trials,conflictRate,meanConflictVertexFraction\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{:.6},{:.6}\n",
            r.fault_fraction, r.trials, r.conflict_rate, r.mean_conflict_vertex_fraction
        ));
    }
    out
}
