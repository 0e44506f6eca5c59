//! Star-convexity, cores, and the tree-level structure checks.
//!
//! A vertex `u` is in the core when every leaf can be reached from `u` along a
//! weight-monotone path, the direction being chosen per leaf. The core is
//! computed with one pair of reverse sweeps per leaf: `u` reaches leaf `v`
//! going up exactly when `v` reaches `u` going down, so
//! `reach(v, Down) ∪ reach(v, Up)` is the set of vertices that cover `v`, and
//! the core is the intersection of those sets over all leaves. Cost is
//! `O(|leaves| · (|V| + |E|))`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{VertexId, WeightedGraph};
use crate::paths::{monotone_path_indices, reach_mask, sequence_directions, Direction, DirectionSet};
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("graph has no leaf vertices")]
    NoLeaves,
    #[error("graph is disconnected ({0} components)")]
    Disconnected(usize),
    #[error("graph is not a tree")]
    NotATree,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex `{0}` is not both a leaf and a core vertex")]
    NotLeafCore(String),
    #[error("graph is not star-convex")]
    NotStarConvex,
}

/// The core of a graph plus, for every core vertex, one witnessing direction
/// per leaf (`Up` preferred when both work).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoreReport {
    pub star_convex: bool,
    pub core: BTreeSet<VertexId>,
    pub witnesses: BTreeMap<VertexId, BTreeMap<VertexId, Direction>>,
}

impl CoreReport {
    pub fn contains(&self, id: &str) -> bool {
        self.core.contains(id)
    }
}

/// Rejects graphs outside the domain of the star-convexity definition.
pub(crate) fn check_domain(g: &WeightedGraph) -> Result<Vec<usize>, CoreError> {
    let components = g.component_count();
    if components != 1 {
        return Err(CoreError::Disconnected(components));
    }
    let leaves = g.leaf_indices();
    if leaves.is_empty() {
        return Err(CoreError::NoLeaves);
    }
    Ok(leaves)
}

/// Core membership mask and, per leaf, the mask of vertices reaching it upward.
pub(crate) fn core_masks(g: &WeightedGraph, leaves: &[usize]) -> (Vec<bool>, Vec<Vec<bool>>) {
    let mut in_core = vec![true; g.vertex_count()];
    let mut reaches_up = Vec::with_capacity(leaves.len());
    for &leaf in leaves {
        let up_to_leaf = reach_mask(g, leaf, Direction::Down);
        let down_to_leaf = reach_mask(g, leaf, Direction::Up);
        for (u, flag) in in_core.iter_mut().enumerate() {
            *flag &= up_to_leaf[u] || down_to_leaf[u];
        }
        reaches_up.push(up_to_leaf);
    }
    (in_core, reaches_up)
}

pub fn core(g: &WeightedGraph) -> Result<CoreReport, CoreError> {
    let leaves = check_domain(g)?;
    let (in_core, reaches_up) = core_masks(g, &leaves);
    let mut core = BTreeSet::new();
    let mut witnesses = BTreeMap::new();
    for u in (0..g.vertex_count()).filter(|&u| in_core[u]) {
        let per_leaf = leaves
            .iter()
            .zip(&reaches_up)
            .map(|(&leaf, up)| {
                let d = if up[u] { Direction::Up } else { Direction::Down };
                (g.id(leaf).clone(), d)
            })
            .collect();
        core.insert(g.id(u).clone());
        witnesses.insert(g.id(u).clone(), per_leaf);
    }
    Ok(CoreReport { star_convex: !core.is_empty(), core, witnesses })
}

pub fn is_star_convex(g: &WeightedGraph) -> Result<bool, CoreError> {
    core(g).map(|r| r.star_convex)
}

/// Rebuilds the witness path for `(core vertex, leaf, direction)`.
pub fn witness_path(g: &WeightedGraph, from: &str, leaf: &str, d: Direction) -> Option<Vec<VertexId>> {
    let (a, b) = (g.index_of(from)?, g.index_of(leaf)?);
    monotone_path_indices(g, a, b, d).map(|p| p.into_iter().map(|i| g.id(i).clone()).collect())
}

/// Outcome of checking that all paths from a leaf core vertex share one direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum LeafCoreAlignment {
    Aligned { direction: Direction, admissible: DirectionSet },
    /// The paths from the root to the leaves seen so far admit no common
    /// direction once `leaf` is added.
    Violation { leaf: VertexId },
}

/// For a tree `t` and a vertex `u` that is both a leaf and in the core,
/// intersects the direction sets of all paths from `u` to the other leaves.
pub fn check_leaf_core_alignment(t: &WeightedGraph, u: &str) -> Result<LeafCoreAlignment, CoreError> {
    if !t.is_tree() {
        return Err(CoreError::NotATree);
    }
    let root = t.index_of(u).ok_or_else(|| CoreError::UnknownVertex(u.to_string()))?;
    let leaves = check_domain(t)?;
    let (in_core, _) = core_masks(t, &leaves);
    if t.degree(root) != 1 || !in_core[root] {
        return Err(CoreError::NotLeafCore(u.to_string()));
    }
    let parents = t.bfs_parents(root);
    let mut admissible = DirectionSet::BOTH;
    for &leaf in leaves.iter().filter(|&&l| l != root) {
        let path = WeightedGraph::tree_path(&parents, root, leaf);
        admissible = admissible.intersect(sequence_directions(t, &path));
        if admissible.is_empty() {
            return Ok(LeafCoreAlignment::Violation { leaf: t.id(leaf).clone() });
        }
    }
    let direction = admissible.preferred().expect("non-empty direction set");
    Ok(LeafCoreAlignment::Aligned { direction, admissible })
}

/// Extremal weights over all vertices versus over leaves ∪ core.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalReport {
    pub max_all: Weight,
    pub max_leaves_or_core: Weight,
    pub min_all: Weight,
    pub min_leaves_or_core: Weight,
    /// Vertices of leaves ∪ core attaining `max_all`.
    pub max_attained_by: BTreeSet<VertexId>,
    /// Vertices of leaves ∪ core attaining `min_all`.
    pub min_attained_by: BTreeSet<VertexId>,
    pub holds: bool,
}

/// Compares the max/min weight over `V` with the max/min over leaves ∪ core
/// of a star-convex tree.
pub fn extremal_locus_check(t: &WeightedGraph) -> Result<ExtremalReport, CoreError> {
    if !t.is_tree() {
        return Err(CoreError::NotATree);
    }
    let leaves = check_domain(t)?;
    let (mut restricted, _) = core_masks(t, &leaves);
    if !restricted.iter().any(|&c| c) {
        return Err(CoreError::NotStarConvex);
    }
    for &l in &leaves {
        restricted[l] = true;
    }
    let all = || t.weights().iter();
    let sub = || t.weights().iter().zip(&restricted).filter(|(_, &r)| r).map(|(w, _)| w);
    let max_all = all().max().expect("non-empty").clone();
    let min_all = all().min().expect("non-empty").clone();
    let max_sub = sub().max().expect("non-empty").clone();
    let min_sub = sub().min().expect("non-empty").clone();
    let attaining = |target: &Weight| -> BTreeSet<VertexId> {
        (0..t.vertex_count())
            .filter(|&i| restricted[i] && t.weight(i) == target)
            .map(|i| t.id(i).clone())
            .collect()
    };
    Ok(ExtremalReport {
        holds: max_all == max_sub && min_all == min_sub,
        max_attained_by: attaining(&max_all),
        min_attained_by: attaining(&min_all),
        max_all,
        max_leaves_or_core: max_sub,
        min_all,
        min_leaves_or_core: min_sub,
    })
}
