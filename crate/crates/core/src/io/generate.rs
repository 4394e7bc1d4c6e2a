//! Seeded random games.

use rand::seq::{index, SliceRandom};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{GameGraph, GameGraphBuilder, Player, PriorityFunction, VertexId};

use super::format::GenParityGame;

/// Random total graph with `n` vertices and `m` distinct edges. Every
/// vertex first gets one random successor; the remaining edges are drawn
/// uniformly among the missing ones. Owners are fair coin flips. `m` is
/// clamped to `[n, n²]`.
pub fn random_game_graph(n: usize, m: usize, rng: &mut impl Rng) -> GameGraph {
    let mut b = GameGraphBuilder::new();
    for _ in 0..n {
        let owner = if rng.gen::<bool>() {
            Player::One
        } else {
            Player::Zero
        };
        b.add_vertex(owner);
    }
    if n == 0 {
        return b.build().expect("empty graph is valid");
    }
    let m = m.clamp(n, n * n);
    let mut succ: Vec<Vec<u32>> = (0..n).map(|_| vec![rng.gen_range(0..n as u32)]).collect();
    let mut count = n;
    if m * 2 > n * n {
        let mut missing: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|s| (0..n as u32).map(move |t| (s, t)))
            .filter(|&(s, t)| succ[s as usize][0] != t)
            .collect();
        missing.shuffle(rng);
        for (s, t) in missing.into_iter().take(m - n) {
            succ[s as usize].push(t);
        }
    } else {
        let mut present: std::collections::HashSet<(u32, u32)> = succ
            .iter()
            .enumerate()
            .map(|(s, l)| (s as u32, l[0]))
            .collect();
        while count < m {
            let s = rng.gen_range(0..n as u32);
            let t = rng.gen_range(0..n as u32);
            if present.insert((s, t)) {
                succ[s as usize].push(t);
                count += 1;
            }
        }
    }
    for (s, list) in succ.iter().enumerate() {
        for &t in list {
            b.add_edge(VertexId::new(s), VertexId(t))
                .expect("edges are distinct");
        }
    }
    b.build().expect("every vertex has a successor")
}

/// Priorities in `0..=max`. Half of the vertices (rounded down), chosen at
/// random, are spread evenly over the `max + 1` priorities, with the
/// rounding remainder going to `max`; the others are uniform.
pub fn random_priorities(n: usize, max: u32, rng: &mut impl Rng) -> PriorityFunction {
    let mut prio: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max)).collect();
    let half = n / 2;
    let strata = max as usize + 1;
    let per = half / strata;
    let chosen = index::sample(rng, n, half).into_vec();
    for (i, v) in chosen.into_iter().enumerate() {
        prio[v] = ((i / per.max(1)).min(strata - 1)) as u32;
        if per == 0 {
            prio[v] = max;
        }
    }
    PriorityFunction::with_bound(prio, max).expect("priorities are within the bound")
}

#[derive(Clone, Debug)]
pub struct GeneratorConfig {
    /// Reuse this graph instead of drawing one.
    pub base: Option<GameGraph>,
    pub vertices: usize,
    pub edges: usize,
    pub objectives: usize,
    pub max_priority: u32,
    pub seed: u64,
}

pub fn generate(config: &GeneratorConfig) -> GenParityGame {
    assert!(config.objectives >= 1, "at least one objective");
    assert!(
        config.max_priority >= 1,
        "maximum priority must be at least 1"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let graph = match &config.base {
        Some(g) => g.clone(),
        None => random_game_graph(config.vertices, config.edges, &mut rng),
    };
    let n = graph.vertex_count();
    let objectives = (0..config.objectives)
        .map(|_| random_priorities(n, config.max_priority, &mut rng))
        .collect();
    GenParityGame { graph, objectives }
}
