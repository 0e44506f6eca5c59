//! Witness trees: star-convex subtrees with the same leaf set as their host.
//!
//! A graph is star-convex iff it contains a star-convex tree whose leaves are
//! exactly the graph's leaves. [`extract_witness_tree`] builds one:
//!
//! 1. pick a root `u` in the core (given, or the smallest core vertex);
//! 2. visit the leaves in id order, growing a tree `T = {u}`;
//! 3. for each leaf take the shortest monotone path `P` from `u` (up
//!    preferred), find the last vertex `y` of `P` already in `T`, and attach
//!    the suffix of `P` after `y` below `y`;
//! 4. trim `T` to the minimal subtree spanning the graph's leaves, and move
//!    the root to the vertex where `u` meets that subtree.
//!
//! Step 3 keeps every root-to-node path of `T` monotone. If the tree path to
//! `y` and `P` run in opposite directions then `w(u) = w(y)` and the tree path
//! is constant, so concatenating it with the suffix stays monotone. The
//! direction set of each root path is tracked incrementally and an empty set
//! aborts with [`WitnessError::GraftInvariant`]; that error is never expected.
//!
//! Step 4 matters when `u` is not a leaf of the graph but ends with degree 1
//! in `T`. Every leaf path from the relocated root is a suffix of a leaf path
//! from `u`, so the new root stays in the core.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::convexity::{check_domain, core_masks, CoreError};
use crate::graph::{GraphError, VertexId, WeightedGraph};
use crate::io::{graph_from_value, graph_to_value};
use crate::paths::{monotone_path_indices, Direction, DirectionSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error(transparent)]
    Domain(#[from] CoreError),
    #[error("graph is not star-convex")]
    NotStarConvex,
    #[error("graph has {0} leaf vertices; a witness tree needs at least 2")]
    TooFewLeaves(usize),
    #[error("vertex `{0}` is not in the core")]
    RootNotInCore(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("graph is not a tree")]
    NotATree,
    #[error("{0} terminals given; at least 2 are required")]
    TooFewTerminals(usize),
    #[error("root path to `{0}` stopped being monotone while grafting")]
    GraftInvariant(String),
    #[error(transparent)]
    Document(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessTree {
    pub tree: WeightedGraph,
    pub root: VertexId,
    pub leaf_map: BTreeSet<VertexId>,
}

impl WitnessTree {
    /// Graph document with an added `root` key.
    pub fn to_value(&self) -> Value {
        let mut doc = graph_to_value(&self.tree);
        doc.as_object_mut()
            .expect("graph documents are objects")
            .insert("root".into(), Value::String(self.root.to_string()));
        doc
    }

    /// Reads a tree document. A missing `root` falls back to the smallest vertex id.
    pub fn from_value(doc: &Value) -> Result<Self, WitnessError> {
        let tree = graph_from_value(doc)?;
        let root = match doc.get("root").and_then(Value::as_str) {
            Some(id) => VertexId::new(id)?,
            None => tree
                .ids()
                .first()
                .cloned()
                .ok_or_else(|| GraphError::Document("tree has no vertices".into()))?,
        };
        if !tree.contains(root.as_str()) {
            return Err(WitnessError::UnknownVertex(root.to_string()));
        }
        let leaf_map = tree.leaves().into_set();
        Ok(WitnessTree { tree, root, leaf_map })
    }
}

pub fn extract_witness_tree(g: &WeightedGraph, root: Option<&str>) -> Result<WitnessTree, WitnessError> {
    let leaves = check_domain(g)?;
    if leaves.len() < 2 {
        return Err(WitnessError::TooFewLeaves(leaves.len()));
    }
    let (in_core, reaches_up) = core_masks(g, &leaves);
    let root = match root {
        Some(id) => {
            let r = g.index_of(id).ok_or_else(|| WitnessError::UnknownVertex(id.to_string()))?;
            if !in_core[r] {
                return Err(WitnessError::RootNotInCore(id.to_string()));
            }
            r
        }
        None => in_core.iter().position(|&c| c).ok_or(WitnessError::NotStarConvex)?,
    };

    let n = g.vertex_count();
    let mut in_tree = vec![false; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut root_dirs = vec![DirectionSet::EMPTY; n];
    in_tree[root] = true;
    root_dirs[root] = DirectionSet::BOTH;

    for (&leaf, up) in leaves.iter().zip(&reaches_up) {
        if in_tree[leaf] {
            continue;
        }
        let d = if up[root] { Direction::Up } else { Direction::Down };
        let path = monotone_path_indices(g, root, leaf, d).expect("core vertices reach every leaf");
        let contact = path.iter().rposition(|&v| in_tree[v]).expect("path starts at the root");
        for step in path[contact..].windows(2) {
            let (prev, node) = (step[0], step[1]);
            parent[node] = Some(prev);
            in_tree[node] = true;
            root_dirs[node] = root_dirs[prev].intersect(DirectionSet::of_step(g.weight(prev), g.weight(node)));
            if root_dirs[node].is_empty() {
                return Err(WitnessError::GraftInvariant(g.id(node).to_string()));
            }
        }
    }

    let vertices: Vec<usize> = (0..n).filter(|&v| in_tree[v]).collect();
    let edges: Vec<(usize, usize)> = vertices
        .iter()
        .filter_map(|&v| parent[v].map(|p| (p.min(v), p.max(v))))
        .collect();
    let grown = g.subgraph(&vertices, &edges);

    let terminals: Vec<usize> = leaves
        .iter()
        .map(|&l| grown.index_of(g.id(l).as_str()).expect("leaves are grafted"))
        .collect();
    let (keep, anchor_parents) = steiner_mask(&grown, &terminals);
    let mut projected = grown.index_of(g.id(root).as_str()).expect("root is in the tree");
    while !keep[projected] {
        projected = anchor_parents[projected].expect("the anchor terminal is kept");
    }
    let tree = induced(&grown, &keep);
    let leaf_map: BTreeSet<VertexId> = leaves.iter().map(|&l| g.id(l).clone()).collect();
    debug_assert_eq!(tree.leaves().as_set(), &leaf_map);
    Ok(WitnessTree { root: grown.id(projected).clone(), tree, leaf_map })
}

fn induced(t: &WeightedGraph, keep: &[bool]) -> WeightedGraph {
    let vertices: Vec<usize> = (0..t.vertex_count()).filter(|&v| keep[v]).collect();
    let edges: Vec<(usize, usize)> = t.edges().filter(|&(a, b)| keep[a] && keep[b]).collect();
    t.subgraph(&vertices, &edges)
}

/// Marks the union of tree paths from the first terminal to every other one,
/// which is the minimal subtree spanning all terminals. Also returns the BFS
/// parents used, rooted at the first terminal.
fn steiner_mask(t: &WeightedGraph, terminals: &[usize]) -> (Vec<bool>, Vec<Option<usize>>) {
    let anchor = terminals[0];
    let parents = t.bfs_parents(anchor);
    let mut keep = vec![false; t.vertex_count()];
    keep[anchor] = true;
    for &term in &terminals[1..] {
        let mut cur = term;
        while !keep[cur] {
            keep[cur] = true;
            cur = parents[cur].expect("trees are connected");
        }
    }
    (keep, parents)
}

/// The minimal subtree of the tree `t` containing every terminal.
pub fn steiner_subtree<S: AsRef<str>>(t: &WeightedGraph, terminals: &[S]) -> Result<WeightedGraph, WitnessError> {
    if !t.is_tree() {
        return Err(WitnessError::NotATree);
    }
    let mut idx = terminals
        .iter()
        .map(|s| t.index_of(s.as_ref()).ok_or_else(|| WitnessError::UnknownVertex(s.as_ref().to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    idx.sort_unstable();
    idx.dedup();
    if idx.len() < 2 {
        return Err(WitnessError::TooFewTerminals(idx.len()));
    }
    Ok(induced(t, &steiner_mask(t, &idx).0))
}

/// The first condition a candidate witness fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum WitnessFailure {
    NotSubgraph { detail: String },
    NotATree,
    LeafSetMismatch { missing: Vec<VertexId>, extra: Vec<VertexId> },
    NotStarConvex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessVerdict {
    pub accepted: bool,
    pub failure: Option<WitnessFailure>,
}

/// Accepts iff `t.tree` is a subgraph of `g`, is a tree, has exactly the
/// leaves of `g`, and is star-convex. Acceptance certifies that `g` is
/// star-convex.
pub fn verify_witness(g: &WeightedGraph, t: &WitnessTree) -> WitnessVerdict {
    let reject = |failure| WitnessVerdict { accepted: false, failure: Some(failure) };
    if let Some(detail) = t.tree.subgraph_mismatch(g) {
        return reject(WitnessFailure::NotSubgraph { detail });
    }
    if !t.tree.is_tree() {
        return reject(WitnessFailure::NotATree);
    }
    let (tree_leaves, host_leaves) = (t.tree.leaves().into_set(), g.leaves().into_set());
    if tree_leaves != host_leaves {
        return reject(WitnessFailure::LeafSetMismatch {
            missing: host_leaves.difference(&tree_leaves).cloned().collect(),
            extra: tree_leaves.difference(&host_leaves).cloned().collect(),
        });
    }
    let leaves = t.tree.leaf_indices();
    if leaves.is_empty() || !core_masks(&t.tree, &leaves).0.iter().any(|&c| c) {
        return reject(WitnessFailure::NotStarConvex);
    }
    WitnessVerdict { accepted: true, failure: None }
}
