//! The weighted-graph model.
//!
//! A [`WeightedGraph`] is a simple undirected graph whose vertices carry exact
//! non-negative rational weights. Vertices are stored in lexicographic order
//! of their ids, so vertex indices double as the deterministic tie-break order
//! used throughout the crate. Values are immutable once built.
//!
//! Connectivity is *not* enforced at construction: intermediate results such
//! as the intersection of two graphs may be disconnected. Use
//! [`WeightedGraph::validate`] to obtain connectivity findings.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::weight::{Weight, WeightError};

/// Textual vertex identifier. Ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(id: impl Into<String>) -> Result<Self, GraphError> {
        let id = id.into();
        if id.is_empty() {
            return Err(GraphError::EmptyId);
        }
        Ok(VertexId(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for VertexId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl std::borrow::Borrow<str> for VertexId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("empty vertex id")]
    EmptyId,
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("edge references unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge `{0}`-`{1}`")]
    DuplicateEdge(String, String),
    #[error("vertex `{id}`: {source}")]
    Weight {
        id: String,
        #[source]
        source: WeightError,
    },
    #[error("invalid graph document: {0}")]
    Document(String),
}

/// The set of degree-1 vertices of a graph.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct LeafSet(BTreeSet<VertexId>);

impl LeafSet {
    pub fn contains(&self, id: &str) -> bool {
        self.0.contains(id)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &VertexId> {
        self.0.iter()
    }

    pub fn as_set(&self) -> &BTreeSet<VertexId> {
        &self.0
    }

    pub fn into_set(self) -> BTreeSet<VertexId> {
        self.0
    }
}

/// Structural findings for a graph: connectivity, leaves, degrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub connected: bool,
    pub components: usize,
    pub is_tree: bool,
    pub leaves: LeafSet,
    pub degrees: BTreeMap<VertexId, usize>,
    pub findings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    ids: Vec<VertexId>,
    weights: Vec<Weight>,
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl WeightedGraph {
    /// Builds a graph, rejecting duplicate ids, unknown endpoints, self-loops
    /// and repeated edges (in either orientation).
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = (VertexId, Weight)>,
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut vertices: Vec<(VertexId, Weight)> = vertices.into_iter().collect();
        vertices.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(pair) = vertices.windows(2).find(|p| p[0].0 == p[1].0) {
            return Err(GraphError::DuplicateVertex(pair[0].0.to_string()));
        }
        let (ids, weights): (Vec<_>, Vec<_>) = vertices.into_iter().unzip();
        let mut graph = WeightedGraph {
            adjacency: vec![Vec::new(); ids.len()],
            ids,
            weights,
            edge_count: 0,
        };
        for (a, b) in edges {
            let ia = graph
                .index_of(a.as_str())
                .ok_or_else(|| GraphError::UnknownVertex(a.to_string()))?;
            let ib = graph
                .index_of(b.as_str())
                .ok_or_else(|| GraphError::UnknownVertex(b.to_string()))?;
            if ia == ib {
                return Err(GraphError::SelfLoop(a.to_string()));
            }
            if graph.adjacency[ia].contains(&ib) {
                return Err(GraphError::DuplicateEdge(a.to_string(), b.to_string()));
            }
            graph.adjacency[ia].push(ib);
            graph.adjacency[ib].push(ia);
            graph.edge_count += 1;
        }
        for list in &mut graph.adjacency {
            list.sort_unstable();
        }
        Ok(graph)
    }

    /// Convenience constructor from string literals; weights use the decimal
    /// grammar accepted by [`Weight`].
    pub fn from_strs(vertices: &[(&str, &str)], edges: &[(&str, &str)]) -> Result<Self, GraphError> {
        let vertices = vertices
            .iter()
            .map(|(id, w)| {
                let weight = w.parse().map_err(|source| GraphError::Weight {
                    id: id.to_string(),
                    source,
                })?;
                Ok((VertexId::new(*id)?, weight))
            })
            .collect::<Result<Vec<_>, GraphError>>()?;
        let edges = edges
            .iter()
            .map(|(a, b)| Ok((VertexId::new(*a)?, VertexId::new(*b)?)))
            .collect::<Result<Vec<_>, GraphError>>()?;
        WeightedGraph::new(vertices, edges)
    }

    /// The subgraph on `vertices` (indices into `self`) with the given edges.
    /// Both must already be valid for `self`.
    pub(crate) fn subgraph(&self, vertices: &[usize], edges: &[(usize, usize)]) -> WeightedGraph {
        let vs = vertices
            .iter()
            .map(|&i| (self.ids[i].clone(), self.weights[i].clone()));
        let es = edges
            .iter()
            .map(|&(a, b)| (self.ids[a].clone(), self.ids[b].clone()));
        WeightedGraph::new(vs, es).expect("subgraph of a valid graph is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn id(&self, index: usize) -> &VertexId {
        &self.ids[index]
    }

    pub fn weight(&self, index: usize) -> &Weight {
        &self.weights[index]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight_of(&self, id: &str) -> Option<&Weight> {
        self.index_of(id).map(|i| &self.weights[i])
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.binary_search_by(|probe| probe.as_str().cmp(id)).ok()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index_of(id).is_some()
    }

    /// Neighbour indices in ascending (lexicographic id) order.
    pub fn neighbors(&self, index: usize) -> &[usize] {
        &self.adjacency[index]
    }

    pub fn degree(&self, index: usize) -> usize {
        self.adjacency[index].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn has_edge_ids(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(a), Some(b)) => self.has_edge(a, b),
            _ => false,
        }
    }

    /// Edges as index pairs `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    pub fn edge_ids(&self) -> Vec<(VertexId, VertexId)> {
        self.edges()
            .map(|(a, b)| (self.ids[a].clone(), self.ids[b].clone()))
            .collect()
    }

    pub fn leaf_indices(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&i| self.degree(i) == 1).collect()
    }

    /// Exactly the vertices of degree 1. A lone vertex has degree 0 and is
    /// therefore not a leaf.
    pub fn leaves(&self) -> LeafSet {
        LeafSet(self.leaf_indices().into_iter().map(|i| self.ids[i].clone()).collect())
    }

    /// Component label for every vertex, labels numbered from 0.
    fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.vertex_count()];
        let mut count = 0;
        for start in 0..self.vertex_count() {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &n in &self.adjacency[v] {
                    if label[n] == usize::MAX {
                        label[n] = count;
                        queue.push_back(n);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().1
    }

    /// The empty graph is not considered connected.
    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count + 1 == self.vertex_count()
    }

    pub fn validate(&self) -> ValidationReport {
        let components = self.component_count();
        let mut findings = Vec::new();
        if self.vertex_count() == 0 {
            findings.push("graph has no vertices".to_string());
        } else if components > 1 {
            findings.push(format!("graph is disconnected ({components} components)"));
        }
        let leaves = self.leaves();
        if leaves.is_empty() {
            findings.push("graph has no leaf vertices".to_string());
        }
        ValidationReport {
            connected: components == 1,
            components,
            is_tree: self.is_tree(),
            leaves,
            degrees: self
                .ids
                .iter()
                .enumerate()
                .map(|(i, id)| (id.clone(), self.degree(i)))
                .collect(),
            findings,
        }
    }

    /// `None` when `self` is a subgraph of `other` with matching weights,
    /// otherwise a description of the first mismatch.
    pub fn subgraph_mismatch(&self, other: &WeightedGraph) -> Option<String> {
        for (id, w) in self.ids.iter().zip(&self.weights) {
            match other.weight_of(id.as_str()) {
                None => return Some(format!("vertex `{id}` is not in the host graph")),
                Some(ow) if ow != w => {
                    return Some(format!("vertex `{id}` has weight {w} but {ow} in the host graph"))
                }
                Some(_) => {}
            }
        }
        self.edges()
            .map(|(a, b)| (&self.ids[a], &self.ids[b]))
            .find(|(a, b)| !other.has_edge_ids(a.as_str(), b.as_str()))
            .map(|(a, b)| format!("edge `{a}`-`{b}` is not in the host graph"))
    }

    pub fn is_subgraph_of(&self, other: &WeightedGraph) -> bool {
        self.subgraph_mismatch(other).is_none()
    }

    /// BFS parent pointers from `root`; the root and unreachable vertices get `None`.
    pub fn bfs_parents(&self, root: usize) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.vertex_count()];
        let mut seen = vec![false; self.vertex_count()];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &n in &self.adjacency[v] {
                if !seen[n] {
                    seen[n] = true;
                    parent[n] = Some(v);
                    queue.push_back(n);
                }
            }
        }
        parent
    }

    /// The vertex sequence from `root` to `target` along the BFS tree rooted
    /// at `root`. In a tree this is the unique path.
    pub fn tree_path(parents: &[Option<usize>], root: usize, target: usize) -> Vec<usize> {
        let mut path = vec![target];
        let mut cur = target;
        while cur != root {
            cur = parents[cur].expect("target must be reachable from root");
            path.push(cur);
        }
        path.reverse();
        path
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn figure_one() -> WeightedGraph {
        WeightedGraph::from_strs(
            &[("v1", "1"), ("v2", "1"), ("v3", "2"), ("v4", "2"), ("v5", "2")],
            &[("v1", "v3"), ("v2", "v3"), ("v2", "v4"), ("v3", "v5"), ("v4", "v5")],
        )
        .unwrap()
    }

    fn ids(set: &LeafSet) -> Vec<&str> {
        set.iter().map(|v| v.as_str()).collect()
    }

    #[test]
    fn construction_errors() {
        let e = WeightedGraph::from_strs(&[("a", "1"), ("a", "2")], &[]).unwrap_err();
        assert_eq!(e, GraphError::DuplicateVertex("a".into()));
        let e = WeightedGraph::from_strs(&[("a", "1")], &[("a", "a")]).unwrap_err();
        assert_eq!(e, GraphError::SelfLoop("a".into()));
        let e = WeightedGraph::from_strs(&[("a", "1")], &[("a", "z")]).unwrap_err();
        assert_eq!(e, GraphError::UnknownVertex("z".into()));
        let e = WeightedGraph::from_strs(&[("a", "1"), ("b", "1")], &[("a", "b"), ("b", "a")])
            .unwrap_err();
        assert_eq!(e, GraphError::DuplicateEdge("b".into(), "a".into()));
        let e = WeightedGraph::from_strs(&[("a", "-1")], &[]).unwrap_err();
        assert!(matches!(e, GraphError::Weight { ref id, .. } if id == "a"));
        assert_eq!(VertexId::new(""), Err(GraphError::EmptyId));
    }

    #[test]
    fn leaves_are_degree_one() {
        let star = WeightedGraph::from_strs(
            &[("c", "0"), ("t1", "1"), ("t2", "2"), ("t3", "3"), ("t4", "4")],
            &[("c", "t1"), ("c", "t2"), ("c", "t3"), ("c", "t4")],
        )
        .unwrap();
        assert_eq!(ids(&star.leaves()), ["t1", "t2", "t3", "t4"]);
        assert_eq!(ids(&figure_one().leaves()), ["v1"]);

        let cycle = WeightedGraph::from_strs(
            &[("a", "1"), ("b", "1"), ("c", "1"), ("d", "1")],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        )
        .unwrap();
        assert!(cycle.leaves().is_empty());

        let lone = WeightedGraph::from_strs(&[("a", "1")], &[]).unwrap();
        assert!(lone.leaves().is_empty());
    }

    #[test]
    fn validation_findings() {
        let path = WeightedGraph::from_strs(
            &[("a", "1"), ("b", "1"), ("c", "1")],
            &[("a", "b"), ("b", "c")],
        )
        .unwrap();
        let report = path.validate();
        assert!(report.connected && report.is_tree);
        assert_eq!(ids(&report.leaves), ["a", "c"]);
        assert_eq!(report.degrees["b"], 2);

        let two = WeightedGraph::from_strs(&[("a", "1"), ("b", "1")], &[]).unwrap();
        let report = two.validate();
        assert!(!report.connected);
        assert_eq!(report.components, 2);
        assert!(report.findings[0].contains("disconnected"));

        let figure_two = WeightedGraph::from_strs(
            &[("v1", "1"), ("v2", "1"), ("v3", "2"), ("v4", "2"), ("v5", "2")],
            &[("v1", "v3"), ("v2", "v3"), ("v2", "v4"), ("v3", "v5"), ("v3", "v4")],
        )
        .unwrap();
        let report = figure_two.validate();
        assert!(report.connected);
        assert_eq!(ids(&report.leaves), ["v1", "v5"]);
    }

    #[test]
    fn equality_includes_weights() {
        let a = WeightedGraph::from_strs(&[("a", "1"), ("b", "2")], &[("a", "b")]).unwrap();
        let b = WeightedGraph::from_strs(&[("b", "2"), ("a", "1")], &[("b", "a")]).unwrap();
        let c = WeightedGraph::from_strs(&[("a", "1"), ("b", "3")], &[("a", "b")]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn subgraph_relation() {
        let g = figure_one();
        let part = WeightedGraph::from_strs(&[("v1", "1"), ("v3", "2")], &[("v1", "v3")]).unwrap();
        assert!(part.is_subgraph_of(&g));
        assert!(!g.is_subgraph_of(&part));
        let reweighted =
            WeightedGraph::from_strs(&[("v1", "1"), ("v3", "3")], &[("v1", "v3")]).unwrap();
        assert!(reweighted.subgraph_mismatch(&g).unwrap().contains("weight"));
    }

    #[test]
    fn tree_paths() {
        let g = figure_one();
        let parents = g.bfs_parents(0);
        let path = WeightedGraph::tree_path(&parents, 0, g.index_of("v4").unwrap());
        let names: Vec<_> = path.iter().map(|&i| g.id(i).as_str()).collect();
        assert_eq!(names, ["v1", "v3", "v2", "v4"]);
    }
}
