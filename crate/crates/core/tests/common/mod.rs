#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strategy_templates::io::generate::{random_game_graph, random_priorities};
use strategy_templates::{
    Edge, GameGraph, Player, PriorityFunction, Strategy, StrategyTemplate, VertexId, VertexSet,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Graph with `n` in `lo..=hi` vertices and up to `density * n` edges.
pub fn graph(rng: &mut ChaCha8Rng, lo: usize, hi: usize, density: usize) -> GameGraph {
    let n = rng.gen_range(lo..=hi);
    let m = rng.gen_range(n..=density * n);
    random_game_graph(n, m, rng)
}

/// Priorities with a random maximum in `1..=top`.
pub fn priorities(rng: &mut ChaCha8Rng, g: &GameGraph, top: u32) -> PriorityFunction {
    let max = rng.gen_range(1..=top);
    random_priorities(g.vertex_count(), max, rng)
}

pub fn subset(rng: &mut ChaCha8Rng, g: &GameGraph, density: f64) -> VertexSet {
    g.set_of(g.vertices().filter(|_| rng.gen_bool(density)))
}

/// Random round-robin strategy that follows `t`: at every Player-0 vertex of
/// the region it rotates over a random nonempty set of unblocked edges
/// including one unblocked edge of each live group at that vertex.
pub fn sample_compliant(rng: &mut ChaCha8Rng, g: &GameGraph, t: &StrategyTemplate) -> Strategy {
    let mut s = Strategy::empty(g.vertex_count());
    for v in t.region.iter() {
        if g.owner(v) != Player::Zero {
            continue;
        }
        let free: Vec<VertexId> = g
            .successors(v)
            .iter()
            .copied()
            .filter(|&w| !t.blocks(&Edge::new(v, w)))
            .collect();
        let mut moves: Vec<VertexId> = free.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        for h in &t.live_groups {
            let open: Vec<VertexId> = h.at(v).filter(|e| !t.blocks(e)).map(|e| e.target).collect();
            if let Some(&w) = open.choose(rng) {
                if !moves.contains(&w) {
                    moves.push(w);
                }
            }
        }
        if moves.is_empty() {
            moves.push(
                *free
                    .choose(rng)
                    .expect("conflict-free templates keep an edge"),
            );
        }
        moves.shuffle(rng);
        s.set_moves(v, moves);
    }
    s
}
