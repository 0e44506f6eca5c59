//! Union and intersection of weighted graphs, core-overlap analysis, and the
//! subgraph core-containment probe.
//!
//! Vertices are identified by id. A shared id must carry the same weight in
//! both operands; a conflict is an error rather than something to merge.

use std::collections::BTreeSet;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::convexity::{check_domain, core, core_masks, CoreError};
use crate::graph::{VertexId, WeightedGraph};
use crate::io::graph_digest;
use crate::paths::{reach_mask, Direction};
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpsError {
    #[error("vertex `{id}` has weight {left} in the first graph but {right} in the second")]
    WeightConflict { id: String, left: Box<Weight>, right: Box<Weight> },
    #[error("first graph is not a subgraph of the second: {0}")]
    NotSubgraph(String),
    #[error("{which} graph: {source}")]
    Domain {
        which: &'static str,
        #[source]
        source: CoreError,
    },
    #[error("{0} graph is not star-convex")]
    NotStarConvex(&'static str),
    #[error("union of graphs sharing core vertices {0:?} is not star-convex")]
    UnionClaimViolated(Vec<VertexId>),
}

fn check_consistent(g1: &WeightedGraph, g2: &WeightedGraph) -> Result<(), OpsError> {
    for (id, w) in g1.ids().iter().zip(g1.weights()) {
        if let Some(other) = g2.weight_of(id.as_str()) {
            if other != w {
                return Err(OpsError::WeightConflict { id: id.to_string(), left: Box::new(w.clone()), right: Box::new(other.clone()) });
            }
        }
    }
    Ok(())
}

pub fn graph_union(g1: &WeightedGraph, g2: &WeightedGraph) -> Result<WeightedGraph, OpsError> {
    check_consistent(g1, g2)?;
    let mut vertices: Vec<(VertexId, Weight)> = g1.ids().iter().cloned().zip(g1.weights().iter().cloned()).collect();
    vertices.extend(
        g2.ids()
            .iter()
            .zip(g2.weights())
            .filter(|(id, _)| !g1.contains(id.as_str()))
            .map(|(id, w)| (id.clone(), w.clone())),
    );
    let mut edges = g1.edge_ids();
    edges.extend(g2.edge_ids().into_iter().filter(|(a, b)| !g1.has_edge_ids(a.as_str(), b.as_str())));
    Ok(WeightedGraph::new(vertices, edges).expect("union of valid graphs is valid"))
}

pub fn graph_intersection(g1: &WeightedGraph, g2: &WeightedGraph) -> Result<WeightedGraph, OpsError> {
    check_consistent(g1, g2)?;
    let vertices = g1
        .ids()
        .iter()
        .zip(g1.weights())
        .filter(|(id, _)| g2.contains(id.as_str()))
        .map(|(id, w)| (id.clone(), w.clone()));
    let edges = g1
        .edge_ids()
        .into_iter()
        .filter(|(a, b)| g2.has_edge_ids(a.as_str(), b.as_str()));
    Ok(WeightedGraph::new(vertices, edges).expect("intersection of valid graphs is valid"))
}

/// Star-convexity of a derived graph: `(star_convex, core, finding)`. Graphs
/// outside the definition's domain are reported as not star-convex together
/// with the reason.
fn assess(g: &WeightedGraph, which: &str) -> (bool, BTreeSet<VertexId>, Option<String>) {
    match core(g) {
        Ok(r) => (r.star_convex, r.core, None),
        Err(e) => (false, BTreeSet::new(), Some(format!("{which}: {e}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OverlapReport {
    pub core_intersection: BTreeSet<VertexId>,
    pub union_star_convex: bool,
    pub intersection_star_convex: bool,
    pub union_core: BTreeSet<VertexId>,
    pub intersection_core: BTreeSet<VertexId>,
    /// Hypothesis violations and domain findings, e.g. a disconnected intersection.
    pub findings: Vec<String>,
}

/// Computes both cores, their intersection, and the star-convexity of the
/// union and the intersection. Whenever the cores overlap and the union has a
/// leaf, the union must be star-convex; a breach returns
/// [`OpsError::UnionClaimViolated`].
pub fn overlap_analysis(g1: &WeightedGraph, g2: &WeightedGraph) -> Result<OverlapReport, OpsError> {
    let union = graph_union(g1, g2)?;
    let meet = graph_intersection(g1, g2)?;
    let mut findings = Vec::new();
    let mut check = |g: &WeightedGraph, which: &str| {
        let (sc, core, finding) = assess(g, which);
        match finding {
            Some(f) => findings.push(f),
            None if !sc => findings.push(format!("{which} is not star-convex")),
            None => {}
        }
        (sc, core)
    };
    let (_, core1) = check(g1, "first graph");
    let (_, core2) = check(g2, "second graph");
    let (union_sc, union_core) = check(&union, "union");
    let (meet_sc, meet_core) = check(&meet, "intersection");

    let core_intersection: BTreeSet<VertexId> = core1.intersection(&core2).cloned().collect();
    if !core_intersection.is_empty() && !union.leaves().is_empty() && !union_sc {
        return Err(OpsError::UnionClaimViolated(core_intersection.into_iter().collect()));
    }
    Ok(OverlapReport {
        core_intersection,
        union_star_convex: union_sc,
        intersection_star_convex: meet_sc,
        union_core,
        intersection_core: meet_core,
        findings,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ProbeOutcome {
    Pass,
    /// `vertex` is in the core of the subgraph but not of the host: no
    /// monotone path leads from it to the host leaf `failing_leaf`.
    Counterexample { vertex: VertexId, failing_leaf: VertexId },
}

/// Tests whether `core(g1) ⊆ core(g2)` for a star-convex subgraph `g1` of a
/// star-convex graph `g2`. The containment is a conjecture; the probe reports
/// the smallest offending core vertex and its smallest unreachable leaf.
pub fn subgraph_core_probe(g1: &WeightedGraph, g2: &WeightedGraph) -> Result<ProbeOutcome, OpsError> {
    if let Some(detail) = g1.subgraph_mismatch(g2) {
        return Err(OpsError::NotSubgraph(detail));
    }
    let inner = core(g1).map_err(|source| OpsError::Domain { which: "first", source })?;
    if !inner.star_convex {
        return Err(OpsError::NotStarConvex("first"));
    }
    let leaves = check_domain(g2).map_err(|source| OpsError::Domain { which: "second", source })?;
    let (host_core, _) = core_masks(g2, &leaves);
    if !host_core.iter().any(|&c| c) {
        return Err(OpsError::NotStarConvex("second"));
    }
    for u in &inner.core {
        let ui = g2.index_of(u.as_str()).expect("subgraph vertices are host vertices");
        if host_core[ui] {
            continue;
        }
        let failing = leaves
            .iter()
            .copied()
            .find(|&leaf| {
                let up = reach_mask(g2, leaf, Direction::Down);
                let down = reach_mask(g2, leaf, Direction::Up);
                !up[ui] && !down[ui]
            })
            .expect("a non-core vertex misses some leaf");
        return Ok(ProbeOutcome::Counterexample { vertex: u.clone(), failing_leaf: g2.id(failing).clone() });
    }
    Ok(ProbeOutcome::Pass)
}

/// One line of the probe log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeRecord {
    pub subgraph_digest: String,
    pub host_digest: String,
    pub outcome: ProbeOutcome,
}

impl ProbeRecord {
    pub fn new(g1: &WeightedGraph, g2: &WeightedGraph, outcome: ProbeOutcome) -> Self {
        ProbeRecord { subgraph_digest: graph_digest(g1), host_digest: graph_digest(g2), outcome }
    }
}

/// Appends `record` as one JSON line to the log at `path`, creating the file if needed.
pub fn append_probe_record(path: &Path, record: &ProbeRecord) -> std::io::Result<()> {
    let line = serde_json::to_string(&serde_json::to_value(record)?)?;
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    writeln!(file, "{line}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn g(vs: &[(&str, &str)], es: &[(&str, &str)]) -> WeightedGraph {
        WeightedGraph::from_strs(vs, es).unwrap()
    }

    fn names(set: &BTreeSet<VertexId>) -> Vec<&str> {
        set.iter().map(VertexId::as_str).collect()
    }

    #[test]
    fn figure_union_and_intersection() {
        let (a, b) = (fixtures::figure_one(), fixtures::figure_two());
        let union = graph_union(&a, &b).unwrap();
        assert_eq!(union, fixtures::figure_union());
        assert_eq!(names(&union.leaves().into_set()), ["v1"]);
        let meet = graph_intersection(&a, &b).unwrap();
        assert_eq!(meet, fixtures::figure_intersection());
        assert!(meet.is_tree());
        assert_eq!(names(&meet.leaves().into_set()), ["v1", "v4", "v5"]);
    }

    #[test]
    fn idempotent_and_commutative() {
        let a = fixtures::figure_one();
        assert_eq!(graph_union(&a, &a).unwrap(), a);
        assert_eq!(graph_intersection(&a, &a).unwrap(), a);
        let b = fixtures::figure_two();
        assert_eq!(graph_union(&a, &b).unwrap(), graph_union(&b, &a).unwrap());
        assert_eq!(graph_intersection(&a, &b).unwrap(), graph_intersection(&b, &a).unwrap());
    }

    #[test]
    fn disjoint_and_edge_disjoint_operands() {
        let a = g(&[("a", "1"), ("b", "2")], &[("a", "b")]);
        let c = g(&[("c", "1"), ("d", "2")], &[("c", "d")]);
        let union = graph_union(&a, &c).unwrap();
        assert!(!union.validate().connected);
        let a2 = g(&[("a", "1"), ("b", "2"), ("x", "0")], &[("a", "x"), ("x", "b")]);
        let meet = graph_intersection(&a, &a2).unwrap();
        assert_eq!(meet.vertex_count(), 2);
        assert_eq!(meet.edge_count(), 0);
    }

    #[test]
    fn weight_conflicts_are_rejected() {
        let a = g(&[("a", "1")], &[]);
        let b = g(&[("a", "2")], &[]);
        let err = graph_union(&a, &b).unwrap_err();
        assert_eq!(err.to_string(), "vertex `a` has weight 1 in the first graph but 2 in the second");
        assert!(graph_intersection(&a, &b).is_err());
    }

    #[test]
    fn figure_overlap() {
        let report = overlap_analysis(&fixtures::figure_one(), &fixtures::figure_two()).unwrap();
        assert!(report.core_intersection.contains("v3"));
        assert!(report.union_star_convex);
        assert!(!report.intersection_star_convex);
        assert!(report.intersection_core.is_empty());
        assert_eq!(names(&report.union_core), ["v1", "v3", "v4", "v5"]);

        let same = overlap_analysis(&fixtures::figure_two(), &fixtures::figure_two()).unwrap();
        assert!(same.union_star_convex && same.intersection_star_convex);
        assert!(same.findings.is_empty());
    }

    #[test]
    fn overlap_records_domain_findings() {
        let a = g(&[("a", "1"), ("b", "2")], &[("a", "b")]);
        let c = g(&[("c", "1"), ("d", "2")], &[("c", "d")]);
        let report = overlap_analysis(&a, &c).unwrap();
        assert!(!report.union_star_convex);
        assert!(report.findings.iter().any(|f| f.starts_with("union: graph is disconnected")));
        assert!(report.findings.iter().any(|f| f.starts_with("intersection:")));
        assert_eq!(report.findings.len(), 2);
    }

    #[test]
    fn core_containment_probe() {
        let fig = fixtures::figure_two();
        assert_eq!(subgraph_core_probe(&fig, &fig).unwrap(), ProbeOutcome::Pass);

        let (small, large) = fixtures::nested_path_pair();
        assert_eq!(
            subgraph_core_probe(&small, &large).unwrap(),
            ProbeOutcome::Counterexample {
                vertex: VertexId::new("v1").unwrap(),
                failing_leaf: VertexId::new("v3").unwrap()
            }
        );
        assert!(matches!(subgraph_core_probe(&large, &small), Err(OpsError::NotSubgraph(_))));
        let meet = fixtures::figure_intersection();
        assert_eq!(subgraph_core_probe(&meet, &fixtures::figure_one()), Err(OpsError::NotStarConvex("first")));
    }

    #[test]
    fn probe_log_appends_lines() {
        let dir = std::env::temp_dir().join(format!("starconvex-probe-{}", std::process::id()));
        let _ = std::fs::remove_file(&dir);
        let (small, large) = fixtures::nested_path_pair();
        let outcome = subgraph_core_probe(&small, &large).unwrap();
        let record = ProbeRecord::new(&small, &large, outcome);
        append_probe_record(&dir, &record).unwrap();
        append_probe_record(&dir, &record).unwrap();
        let text = std::fs::read_to_string(&dir).unwrap();
        std::fs::remove_file(&dir).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        let parsed: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(parsed["outcome"]["verdict"], "counterexample");
        assert_eq!(parsed["outcome"]["vertex"], "v1");
        assert_eq!(parsed["host_digest"].as_str().unwrap().len(), 64);
    }
}
