//! Small named graphs used across tests, the CLI and the acceptance suite.
//!
//! The two five-vertex figure graphs share the weights v1=1, v2=1, v3=2,
//! v4=2, v5=2 and differ in one edge (`v4v5` versus `v3v4`).

use crate::graph::WeightedGraph;

const FIGURE_WEIGHTS: [(&str, &str); 5] = [("v1", "1"), ("v2", "1"), ("v3", "2"), ("v4", "2"), ("v5", "2")];

fn build(vertices: &[(&str, &str)], edges: &[(&str, &str)]) -> WeightedGraph {
    WeightedGraph::from_strs(vertices, edges).expect("fixture graphs are valid")
}

/// Edges v1v3, v2v3, v2v4, v3v5, v4v5. Single leaf v1.
pub fn figure_one() -> WeightedGraph {
    build(&FIGURE_WEIGHTS, &[("v1", "v3"), ("v2", "v3"), ("v2", "v4"), ("v3", "v5"), ("v4", "v5")])
}

/// Edges v1v3, v2v3, v2v4, v3v5, v3v4. Leaves v1 and v5.
pub fn figure_two() -> WeightedGraph {
    build(&FIGURE_WEIGHTS, &[("v1", "v3"), ("v2", "v3"), ("v2", "v4"), ("v3", "v5"), ("v3", "v4")])
}

/// The edge intersection of the two figure graphs: a tree with leaves v1, v4, v5
/// and an empty core.
pub fn figure_intersection() -> WeightedGraph {
    build(&FIGURE_WEIGHTS, &[("v1", "v3"), ("v2", "v3"), ("v2", "v4"), ("v3", "v5")])
}

/// The edge union of the two figure graphs.
pub fn figure_union() -> WeightedGraph {
    build(
        &FIGURE_WEIGHTS,
        &[("v1", "v3"), ("v2", "v3"), ("v2", "v4"), ("v3", "v5"), ("v4", "v5"), ("v3", "v4")],
    )
}

/// Nested star-convex paths v1(1)-v2(3) inside v1(1)-v2(3)-v3(2). The smaller
/// path has core {v1, v2}; the larger has core {v2}, so core containment fails.
pub fn nested_path_pair() -> (WeightedGraph, WeightedGraph) {
    let small = build(&[("v1", "1"), ("v2", "3")], &[("v1", "v2")]);
    let large = build(&[("v1", "1"), ("v2", "3"), ("v3", "2")], &[("v1", "v2"), ("v2", "v3")]);
    (small, large)
}
