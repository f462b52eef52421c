//! The four level graphs of the genus-one, four-point example in characteristic 2.
//!
//! Names list genera level by level: `delta_1_0_00` has a genus-1 top
//! component, one genus-0 component at level -1 and two at level -2.

use super::graph::{
    CoverType, LevelGraph, Marking, Regime, SourceEdge, SourceGraph, SourceVertex, TargetEdge, TargetGraph,
    TargetVertex,
};

fn sv(id: u32, genus: u64, level: i64, cover_type: CoverType, image: u32) -> SourceVertex {
    SourceVertex {
        id,
        genus,
        level,
        cover_type,
        image,
    }
}

fn se(id: u32, v1: u32, v2: u32, slope: i64, image: u32) -> SourceEdge {
    SourceEdge {
        id,
        v1,
        v2,
        slope,
        image,
    }
}

fn tv(id: u32, level: i64) -> TargetVertex {
    TargetVertex { id, genus: 0, level }
}

fn te(id: u32, v1: u32, v2: u32) -> TargetEdge {
    TargetEdge { id, v1, v2 }
}

fn marks(spec: &[(u32, u32)]) -> Vec<Marking> {
    spec.iter()
        .map(|&(image, vertex)| Marking {
            vertex,
            lambda: 2,
            xi: 0,
            image,
        })
        .collect()
}

fn graph(source: SourceGraph, target: TargetGraph, markings: Vec<Marking>) -> LevelGraph {
    LevelGraph {
        p: 2,
        regime: Regime::Mixed,
        source,
        target,
        markings,
    }
}

use CoverType::{ArtinSchreier as As, Frobenius as Fr};

/// Supersingular elliptic curve over a line with four markings.
pub fn delta_1_0() -> LevelGraph {
    graph(
        SourceGraph {
            vertices: vec![sv(0, 1, 0, As, 0), sv(1, 0, -1, Fr, 1)],
            edges: vec![se(0, 0, 1, 3, 0)],
        },
        TargetGraph {
            vertices: vec![tv(0, 0), tv(1, -1)],
            edges: vec![te(0, 0, 1)],
        },
        marks(&[(0, 1), (1, 1), (2, 1), (3, 1)]),
    )
}

/// Ordinary elliptic curve meeting two lines; markings split `{0,1} | {2,3}`.
pub fn delta_1_0_0() -> LevelGraph {
    graph(
        SourceGraph {
            vertices: vec![sv(0, 1, 0, As, 0), sv(1, 0, -1, Fr, 1), sv(2, 0, -1, Fr, 2)],
            edges: vec![se(0, 0, 1, 1, 0), se(1, 0, 2, 1, 1)],
        },
        TargetGraph {
            vertices: vec![tv(0, 0), tv(1, -1), tv(2, -1)],
            edges: vec![te(0, 0, 1), te(1, 0, 2)],
        },
        marks(&[(0, 1), (1, 1), (2, 2), (3, 2)]),
    )
}

/// Three levels with an exact form in the middle.
pub fn delta_1_0_00() -> LevelGraph {
    graph(
        SourceGraph {
            vertices: vec![
                sv(0, 1, 0, As, 0),
                sv(1, 0, -1, Fr, 1),
                sv(2, 0, -2, Fr, 2),
                sv(3, 0, -2, Fr, 3),
            ],
            edges: vec![se(0, 0, 1, 3, 0), se(1, 1, 2, 1, 1), se(2, 1, 3, 1, 2)],
        },
        TargetGraph {
            vertices: vec![tv(0, 0), tv(1, -1), tv(2, -2), tv(3, -2)],
            edges: vec![te(0, 0, 1), te(1, 1, 2), te(2, 1, 3)],
        },
        marks(&[(0, 2), (1, 2), (2, 3), (3, 3)]),
    )
}

/// Two rational top components glued at two points over one target node.
pub fn delta_00_0_0() -> LevelGraph {
    graph(
        SourceGraph {
            vertices: vec![
                sv(0, 0, 0, As, 0),
                sv(1, 0, 0, As, 1),
                sv(2, 0, -1, Fr, 2),
                sv(3, 0, -1, Fr, 3),
            ],
            edges: vec![
                se(0, 0, 1, 0, 0),
                se(1, 0, 1, 0, 0),
                se(2, 0, 2, 1, 1),
                se(3, 1, 3, 1, 2),
            ],
        },
        TargetGraph {
            vertices: vec![tv(0, 0), tv(1, 0), tv(2, -1), tv(3, -1)],
            edges: vec![te(0, 0, 1), te(1, 0, 2), te(2, 1, 3)],
        },
        marks(&[(0, 2), (1, 2), (2, 3), (3, 3)]),
    )
}

pub fn all_named() -> Vec<(&'static str, LevelGraph)> {
    vec![
        ("delta_1_0", delta_1_0()),
        ("delta_1_0_0", delta_1_0_0()),
        ("delta_1_0_00", delta_1_0_00()),
        ("delta_00_0_0", delta_00_0_0()),
    ]
}
