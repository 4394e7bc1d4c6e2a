use crate::error::SolveError;
use crate::graph::{Edge, GameGraph, Player, VertexId, VertexSet};
use crate::template::LiveGroup;
use crate::transformers::{Attraction, Closure};

/// Live groups forcing a visit to `goal` from every vertex of the graph.
pub fn reach_template(g: &GameGraph, goal: &VertexSet) -> Result<Vec<LiveGroup>, SolveError> {
    reach_template_within(g, &g.full_set(), goal)
}

/// Live groups on the subgame induced by `domain`, one group per attractor
/// layer: the Player-0 edges from the new layer into the vertices already
/// collected. Every vertex of `domain` must be in the Player-0 attractor of
/// `goal` within `domain`.
pub fn reach_template_within(
    g: &GameGraph,
    domain: &VertexSet,
    goal: &VertexSet,
) -> Result<Vec<LiveGroup>, SolveError> {
    reach_groups(g, domain, domain, goal)
}

/// Like [`reach_template_within`] for a `region` of `domain` that is the
/// Player-0 attractor of `goal` within `domain`. Successors are counted in
/// all of `domain`, so a Player-0 vertex of `region` with an edge leaving
/// `region` always gets a group.
pub(crate) fn reach_groups(
    g: &GameGraph,
    domain: &VertexSet,
    region: &VertexSet,
    goal: &VertexSet,
) -> Result<Vec<LiveGroup>, SolveError> {
    let target = region.len();
    let mut closure = Closure::new(g, domain, Attraction::Universal);
    let mut fresh = closure.extend(goal.iter());
    let mut groups = Vec::new();
    let mut stamp = vec![false; g.vertex_count()];

    while closure.len() < target {
        let mut layer: Vec<VertexId> = Vec::new();
        for &v in &fresh {
            for &p in g.predecessors(v) {
                if region.contains(p)
                    && !closure.contains(p)
                    && g.owner(p) == Player::Zero
                    && !stamp[p.index()]
                {
                    stamp[p.index()] = true;
                    layer.push(p);
                }
            }
        }
        if layer.is_empty() {
            let stuck = region
                .iter()
                .find(|&v| !closure.contains(v))
                .expect("closure is smaller than the region");
            return Err(SolveError::NotAttractable(stuck.0));
        }
        layer.sort_unstable();
        let group = layer.iter().flat_map(|&b| {
            g.successors(b)
                .iter()
                .filter(|&&t| closure.contains(t))
                .map(move |&t| Edge::new(b, t))
        });
        groups.extend(LiveGroup::new(g, group.collect::<Vec<_>>()));
        fresh = closure.extend(layer);
    }
    debug_assert!(closure.set().is_subset(region));
    Ok(groups)
}
