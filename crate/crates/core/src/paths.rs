//! Weighted-monotone paths.
//!
//! A path is monotone `Up` when weights never decrease along it and `Down`
//! when they never increase. Existence of a monotone path reduces to directed
//! reachability in the *oriented digraph* that keeps arc `a -> b` exactly when
//! `{a, b}` is an edge and the step `w(a) -> w(b)` respects the direction.
//! Any directed walk there shortcuts to a simple path with the same endpoints
//! and the same monotonicity, so plain BFS decides existence.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::graph::{VertexId, WeightedGraph};
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "UP")]
    Up,
    #[serde(rename = "DOWN")]
    Down,
}

impl Direction {
    pub const ALL: [Direction; 2] = [Direction::Up, Direction::Down];

    pub fn reverse(self) -> Direction {
        match self {
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
        }
    }

    /// Whether stepping from weight `from` to weight `to` keeps this monotonicity.
    pub fn allows(self, from: &Weight, to: &Weight) -> bool {
        match self {
            Direction::Up => from <= to,
            Direction::Down => from >= to,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Up => "UP",
            Direction::Down => "DOWN",
        })
    }
}

/// A subset of `{Up, Down}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct DirectionSet {
    up: bool,
    down: bool,
}

impl DirectionSet {
    pub const BOTH: DirectionSet = DirectionSet { up: true, down: true };
    pub const EMPTY: DirectionSet = DirectionSet { up: false, down: false };

    pub fn only(d: Direction) -> Self {
        match d {
            Direction::Up => DirectionSet { up: true, down: false },
            Direction::Down => DirectionSet { up: false, down: true },
        }
    }

    /// Directions compatible with a single step between two weights.
    pub fn of_step(from: &Weight, to: &Weight) -> Self {
        DirectionSet { up: from <= to, down: from >= to }
    }

    pub fn contains(self, d: Direction) -> bool {
        match d {
            Direction::Up => self.up,
            Direction::Down => self.down,
        }
    }

    pub fn intersect(self, other: DirectionSet) -> DirectionSet {
        DirectionSet { up: self.up && other.up, down: self.down && other.down }
    }

    pub fn is_empty(self) -> bool {
        !self.up && !self.down
    }

    /// `Up` when available, else `Down`.
    pub fn preferred(self) -> Option<Direction> {
        if self.up {
            Some(Direction::Up)
        } else if self.down {
            Some(Direction::Down)
        } else {
            None
        }
    }

    pub fn iter(self) -> impl Iterator<Item = Direction> {
        Direction::ALL.into_iter().filter(move |&d| self.contains(d))
    }
}

// Sorted string list, so "DOWN" precedes "UP".
impl Serialize for DirectionSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut names: Vec<String> = self.iter().map(|d| d.to_string()).collect();
        names.sort();
        names.serialize(serializer)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotonePath {
    pub vertices: Vec<VertexId>,
    pub directions: DirectionSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
}

/// Why a vertex sequence is not a weighted-monotone path. `index` is the
/// 0-based position at which the violation is detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathRejection {
    #[error("empty vertex sequence")]
    Empty,
    #[error("unknown vertex `{id}` at index {index}")]
    UnknownVertex { index: usize, id: String },
    #[error("vertex at index {index} repeats an earlier vertex")]
    RepeatedVertex { index: usize },
    #[error("vertices at indices {} and {index} are not adjacent", index - 1)]
    NotAdjacent { index: usize },
    #[error("weights stop being monotone at index {index}")]
    NotMonotone { index: usize },
}

impl PathRejection {
    pub fn index(&self) -> Option<usize> {
        match self {
            PathRejection::Empty => None,
            PathRejection::UnknownVertex { index, .. }
            | PathRejection::RepeatedVertex { index }
            | PathRejection::NotAdjacent { index }
            | PathRejection::NotMonotone { index } => Some(*index),
        }
    }
}

/// The oriented digraph `D_d` of a graph.
#[derive(Debug, Clone)]
pub struct OrientedDigraph<'g> {
    graph: &'g WeightedGraph,
    direction: Direction,
    successors: Vec<Vec<usize>>,
}

impl<'g> OrientedDigraph<'g> {
    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn successors(&self, index: usize) -> &[usize] {
        &self.successors[index]
    }

    pub fn arc_count(&self) -> usize {
        self.successors.iter().map(Vec::len).sum()
    }

    pub fn has_arc(&self, from: &str, to: &str) -> bool {
        match (self.graph.index_of(from), self.graph.index_of(to)) {
            (Some(a), Some(b)) => self.successors[a].binary_search(&b).is_ok(),
            _ => false,
        }
    }

    /// All arcs as id pairs, sorted.
    pub fn arcs(&self) -> Vec<(VertexId, VertexId)> {
        self.successors
            .iter()
            .enumerate()
            .flat_map(|(a, succ)| succ.iter().map(move |&b| (a, b)))
            .map(|(a, b)| (self.graph.id(a).clone(), self.graph.id(b).clone()))
            .collect()
    }
}

pub fn oriented_digraph(g: &WeightedGraph, d: Direction) -> OrientedDigraph<'_> {
    let successors = (0..g.vertex_count())
        .map(|a| {
            g.neighbors(a)
                .iter()
                .copied()
                .filter(|&b| d.allows(g.weight(a), g.weight(b)))
                .collect()
        })
        .collect();
    OrientedDigraph { graph: g, direction: d, successors }
}

/// Vertices reachable from `source` by a path monotone in `d`, as a mask.
pub(crate) fn reach_mask(g: &WeightedGraph, source: usize, d: Direction) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    seen[source] = true;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        for &n in g.neighbors(v) {
            if !seen[n] && d.allows(g.weight(v), g.weight(n)) {
                seen[n] = true;
                queue.push_back(n);
            }
        }
    }
    seen
}

fn lookup(g: &WeightedGraph, id: &str) -> Result<usize, PathError> {
    g.index_of(id).ok_or_else(|| PathError::UnknownVertex(id.to_string()))
}

/// Every vertex reachable from `source` along a `d`-monotone path, `source` included.
pub fn reach_set(g: &WeightedGraph, source: &str, d: Direction) -> Result<BTreeSet<VertexId>, PathError> {
    let src = lookup(g, source)?;
    Ok(reach_mask(g, src, d)
        .into_iter()
        .enumerate()
        .filter(|&(_, hit)| hit)
        .map(|(i, _)| g.id(i).clone())
        .collect())
}

/// Shortest `d`-monotone path as indices; among shortest paths the
/// lexicographically smallest vertex sequence wins.
pub(crate) fn monotone_path_indices(g: &WeightedGraph, from: usize, to: usize, d: Direction) -> Option<Vec<usize>> {
    // Distances to `to` over reversed arcs: x -> y is an arc iff d.allows(w(x), w(y)).
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[to] = 0;
    let mut queue = VecDeque::from([to]);
    while let Some(y) = queue.pop_front() {
        if y == from {
            break;
        }
        for &x in g.neighbors(y) {
            if dist[x] == usize::MAX && d.allows(g.weight(x), g.weight(y)) {
                dist[x] = dist[y] + 1;
                queue.push_back(x);
            }
        }
    }
    if dist[from] == usize::MAX {
        return None;
    }
    let mut path = vec![from];
    let mut cur = from;
    while cur != to {
        cur = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&n| dist[n] < dist[cur] && dist[n] + 1 == dist[cur] && d.allows(g.weight(cur), g.weight(n)))
            .expect("a BFS layer always has a successor toward the target");
        path.push(cur);
    }
    Some(path)
}

/// Directions in which the index sequence is monotone (adjacency not checked).
pub(crate) fn sequence_directions(g: &WeightedGraph, path: &[usize]) -> DirectionSet {
    path.windows(2).fold(DirectionSet::BOTH, |acc, step| {
        acc.intersect(DirectionSet::of_step(g.weight(step[0]), g.weight(step[1])))
    })
}

pub(crate) fn to_monotone_path(g: &WeightedGraph, path: &[usize]) -> MonotonePath {
    MonotonePath {
        vertices: path.iter().map(|&i| g.id(i).clone()).collect(),
        directions: sequence_directions(g, path),
    }
}

pub fn monotone_path(
    g: &WeightedGraph,
    from: &str,
    to: &str,
    d: Direction,
) -> Result<Option<MonotonePath>, PathError> {
    let (a, b) = (lookup(g, from)?, lookup(g, to)?);
    Ok(monotone_path_indices(g, a, b, d).map(|p| to_monotone_path(g, &p)))
}

/// Checks that `vs` is a simple path of `g` and returns its direction set.
pub fn classify_path<S: AsRef<str>>(g: &WeightedGraph, vs: &[S]) -> Result<MonotonePath, PathRejection> {
    if vs.is_empty() {
        return Err(PathRejection::Empty);
    }
    let mut indices: Vec<usize> = Vec::with_capacity(vs.len());
    let mut seen = vec![false; g.vertex_count()];
    let mut dirs = DirectionSet::BOTH;
    for (index, id) in vs.iter().enumerate() {
        let id = id.as_ref();
        let v = g
            .index_of(id)
            .ok_or_else(|| PathRejection::UnknownVertex { index, id: id.to_string() })?;
        if seen[v] {
            return Err(PathRejection::RepeatedVertex { index });
        }
        seen[v] = true;
        if let Some(&prev) = indices.last() {
            if !g.has_edge(prev, v) {
                return Err(PathRejection::NotAdjacent { index });
            }
            dirs = dirs.intersect(DirectionSet::of_step(g.weight(prev), g.weight(v)));
            if dirs.is_empty() {
                return Err(PathRejection::NotMonotone { index });
            }
        }
        indices.push(v);
    }
    Ok(to_monotone_path(g, &indices))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(set: &BTreeSet<VertexId>) -> Vec<&str> {
        set.iter().map(VertexId::as_str).collect()
    }

    fn arc(a: &str, b: &str) -> (VertexId, VertexId) {
        (VertexId::new(a).unwrap(), VertexId::new(b).unwrap())
    }

    #[test]
    fn orientation_rule() {
        let g = WeightedGraph::from_strs(&[("a", "1"), ("b", "2")], &[("a", "b")]).unwrap();
        assert_eq!(oriented_digraph(&g, Direction::Up).arcs(), vec![arc("a", "b")]);
        assert_eq!(oriented_digraph(&g, Direction::Down).arcs(), vec![arc("b", "a")]);

        let flat = WeightedGraph::from_strs(&[("a", "2"), ("b", "2")], &[("a", "b")]).unwrap();
        for d in Direction::ALL {
            assert_eq!(oriented_digraph(&flat, d).arcs(), vec![arc("a", "b"), arc("b", "a")]);
        }
    }

    #[test]
    fn figure_one_up_arcs() {
        let g = fixtures::figure_one();
        let up = oriented_digraph(&g, Direction::Up);
        let expected = [
            ("v1", "v3"),
            ("v2", "v3"),
            ("v2", "v4"),
            ("v3", "v5"),
            ("v4", "v5"),
            ("v5", "v3"),
            ("v5", "v4"),
        ];
        assert_eq!(up.arcs(), expected.iter().map(|(a, b)| arc(a, b)).collect::<Vec<_>>());
        assert!(!up.has_arc("v3", "v1"));
        assert_eq!(up.arc_count(), 7);
    }

    #[test]
    fn reach_sets() {
        let inc = WeightedGraph::from_strs(&[("a", "1"), ("b", "2"), ("c", "3")], &[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(names(&reach_set(&inc, "a", Direction::Up).unwrap()), ["a", "b", "c"]);
        let peak = WeightedGraph::from_strs(&[("a", "1"), ("b", "2"), ("c", "1")], &[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(names(&reach_set(&peak, "a", Direction::Up).unwrap()), ["a", "b"]);

        let meet = fixtures::figure_intersection();
        assert_eq!(names(&reach_set(&meet, "v3", Direction::Down).unwrap()), ["v1", "v2", "v3", "v5"]);
        assert_eq!(reach_set(&meet, "zz", Direction::Down), Err(PathError::UnknownVertex("zz".into())));
    }

    #[test]
    fn shortest_lexicographic_paths() {
        let g = fixtures::figure_one();
        let trivial = monotone_path(&g, "v2", "v2", Direction::Down).unwrap().unwrap();
        assert_eq!(trivial.vertices.len(), 1);
        assert_eq!(trivial.directions, DirectionSet::BOTH);

        let fig2 = fixtures::figure_two();
        let p = monotone_path(&fig2, "v3", "v1", Direction::Down).unwrap().unwrap();
        assert_eq!(p.vertices, vec![VertexId::new("v3").unwrap(), VertexId::new("v1").unwrap()]);
        assert_eq!(p.directions, DirectionSet::only(Direction::Down));

        let meet = fixtures::figure_intersection();
        for d in Direction::ALL {
            assert_eq!(monotone_path(&meet, "v3", "v4", d).unwrap(), None);
        }

        // Two shortest routes a-b-d and a-c-d; the lexicographically smaller wins.
        let diamond = WeightedGraph::from_strs(
            &[("a", "0"), ("b", "1"), ("c", "1"), ("d", "2")],
            &[("a", "c"), ("a", "b"), ("c", "d"), ("b", "d")],
        )
        .unwrap();
        let p = monotone_path(&diamond, "a", "d", Direction::Up).unwrap().unwrap();
        let ids: Vec<_> = p.vertices.iter().map(VertexId::as_str).collect();
        assert_eq!(ids, ["a", "b", "d"]);
    }

    #[test]
    fn classification() {
        let g = WeightedGraph::from_strs(&[("a", "1"), ("b", "2"), ("c", "3")], &[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(classify_path(&g, &["a", "b", "c"]).unwrap().directions, DirectionSet::only(Direction::Up));
        assert_eq!(classify_path(&g, &["c", "b"]).unwrap().directions, DirectionSet::only(Direction::Down));
        assert_eq!(classify_path(&g, &["a", "c"]), Err(PathRejection::NotAdjacent { index: 1 }));
        assert_eq!(classify_path(&g, &["a", "b", "a"]), Err(PathRejection::RepeatedVertex { index: 2 }));
        assert_eq!(classify_path::<&str>(&g, &[]), Err(PathRejection::Empty));

        let flat = WeightedGraph::from_strs(&[("a", "2"), ("b", "2"), ("c", "2")], &[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(classify_path(&flat, &["a", "b", "c"]).unwrap().directions, DirectionSet::BOTH);

        let fig = fixtures::figure_one();
        let rejection = classify_path(&fig, &["v1", "v3", "v2"]).unwrap_err();
        assert_eq!(rejection, PathRejection::NotMonotone { index: 2 });
        assert_eq!(rejection.index(), Some(2));
    }

    #[test]
    fn direction_set_serializes_sorted() {
        assert_eq!(serde_json::to_string(&DirectionSet::BOTH).unwrap(), r#"["DOWN","UP"]"#);
        assert_eq!(DirectionSet::BOTH.preferred(), Some(Direction::Up));
        assert_eq!(DirectionSet::EMPTY.preferred(), None);
    }
}
