//! Small named games shared by the tests and the CLI examples.

use crate::graph::{GameGraph, GameGraphBuilder, Player, PriorityFunction, VertexId};

/// Vertex handles for [`six`].
#[derive(Clone, Copy, Debug)]
pub struct Six {
    pub a: VertexId,
    pub b: VertexId,
    pub c: VertexId,
    pub d: VertexId,
    pub e: VertexId,
    pub f: VertexId,
}

/// Six-vertex game: `a` and `d` belong to Player 0, the rest to Player 1.
pub fn six() -> (GameGraph, Six) {
    let mut b = GameGraphBuilder::new();
    let owners = [
        ("a", Player::Zero),
        ("b", Player::One),
        ("c", Player::One),
        ("d", Player::Zero),
        ("e", Player::One),
        ("f", Player::One),
    ];
    let ids: Vec<VertexId> = owners
        .iter()
        .map(|(name, owner)| b.add_named_vertex(*owner, *name))
        .collect();
    let v = Six {
        a: ids[0],
        b: ids[1],
        c: ids[2],
        d: ids[3],
        e: ids[4],
        f: ids[5],
    };
    let edges = [
        (v.a, v.a),
        (v.a, v.b),
        (v.a, v.c),
        (v.a, v.d),
        (v.b, v.a),
        (v.b, v.d),
        (v.c, v.a),
        (v.c, v.d),
        (v.d, v.a),
        (v.d, v.b),
        (v.d, v.e),
        (v.e, v.b),
        (v.e, v.f),
        (v.f, v.b),
    ];
    for (s, t) in edges {
        b.add_edge(s, t).expect("fixture edges are valid");
    }
    (b.build().expect("fixture graph is total"), v)
}

/// Priorities `a..f -> 0,2,1,1,1,1` on [`six`].
pub fn six_parity() -> PriorityFunction {
    PriorityFunction::new(vec![0, 2, 1, 1, 1, 1])
}

/// Vertex handles for [`eight`].
#[derive(Clone, Copy, Debug)]
pub struct Eight {
    pub a: VertexId,
    pub b: VertexId,
    pub c: VertexId,
    pub d: VertexId,
    pub e: VertexId,
    pub f: VertexId,
    pub g: VertexId,
    pub h: VertexId,
}

/// Eight-vertex parity game with priorities `1,4,5,6,2,2,1,3` on `a..h`;
/// `c` and `e` belong to Player 1.
pub fn eight() -> (GameGraph, PriorityFunction, Eight) {
    let mut b = GameGraphBuilder::new();
    let layout = [
        ("a", Player::Zero),
        ("b", Player::Zero),
        ("c", Player::One),
        ("d", Player::Zero),
        ("e", Player::One),
        ("f", Player::Zero),
        ("g", Player::Zero),
        ("h", Player::Zero),
    ];
    let ids: Vec<VertexId> = layout
        .iter()
        .map(|(name, owner)| b.add_named_vertex(*owner, *name))
        .collect();
    let v = Eight {
        a: ids[0],
        b: ids[1],
        c: ids[2],
        d: ids[3],
        e: ids[4],
        f: ids[5],
        g: ids[6],
        h: ids[7],
    };
    let edges = [
        (v.a, v.a),
        (v.a, v.b),
        (v.b, v.a),
        (v.b, v.c),
        (v.c, v.b),
        (v.d, v.c),
        (v.e, v.d),
        (v.e, v.f),
        (v.f, v.f),
        (v.g, v.g),
        (v.g, v.f),
        (v.h, v.h),
        (v.h, v.d),
        (v.h, v.e),
    ];
    for (s, t) in edges {
        b.add_edge(s, t).expect("fixture edges are valid");
    }
    let priorities = PriorityFunction::new(vec![1, 4, 5, 6, 2, 2, 1, 3]);
    (b.build().expect("fixture graph is total"), priorities, v)
}
