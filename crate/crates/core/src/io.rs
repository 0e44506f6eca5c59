//! Graph JSON documents and DOT export.
//!
//! Document shape:
//! `{"vertices":[{"id":"a","w":"1.5"},...],"edges":[["a","b"],...]}`.
//! Weights may be decimal strings, fraction strings or JSON integers. Unknown
//! top-level keys are ignored so that richer documents (such as witness trees)
//! can embed a graph.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::convexity::CoreReport;
use crate::graph::{GraphError, VertexId, WeightedGraph};
use crate::weight::{Weight, WeightError};

fn doc_err(msg: impl Into<String>) -> GraphError {
    GraphError::Document(msg.into())
}

fn parse_weight(id: &str, raw: &Value) -> Result<Weight, GraphError> {
    let wrap = |source| GraphError::Weight { id: id.to_string(), source };
    match raw {
        Value::String(s) => s.parse().map_err(wrap),
        Value::Number(n) if n.is_u64() => Ok(Weight::from_integer(n.as_u64().unwrap())),
        Value::Number(n) if n.is_i64() => Err(wrap(WeightError::Negative(n.to_string()))),
        other => Err(wrap(WeightError::Malformed(other.to_string()))),
    }
}

/// Reads a graph from an already-decoded JSON value.
pub fn graph_from_value(doc: &Value) -> Result<WeightedGraph, GraphError> {
    let obj = doc.as_object().ok_or_else(|| doc_err("expected a JSON object"))?;
    let vertices = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| doc_err("missing `vertices` array"))?;
    let edges = obj
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| doc_err("missing `edges` array"))?;

    let mut parsed_vertices = Vec::with_capacity(vertices.len());
    for v in vertices {
        let id = v
            .get("id")
            .and_then(Value::as_str)
            .ok_or_else(|| doc_err(format!("vertex without string `id`: {v}")))?;
        let w = v
            .get("w")
            .ok_or_else(|| doc_err(format!("vertex `{id}` has no `w`")))?;
        parsed_vertices.push((VertexId::new(id)?, parse_weight(id, w)?));
    }

    let mut parsed_edges = Vec::with_capacity(edges.len());
    for e in edges {
        let pair = e
            .as_array()
            .filter(|p| p.len() == 2)
            .and_then(|p| Some((p[0].as_str()?, p[1].as_str()?)))
            .ok_or_else(|| doc_err(format!("edge must be a pair of ids: {e}")))?;
        parsed_edges.push((VertexId::new(pair.0)?, VertexId::new(pair.1)?));
    }
    WeightedGraph::new(parsed_vertices, parsed_edges)
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph, GraphError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| doc_err(e.to_string()))?;
    graph_from_value(&doc)
}

/// Canonical JSON value: vertices and edges in lexicographic order.
pub fn graph_to_value(g: &WeightedGraph) -> Value {
    let vertices: Vec<Value> = g
        .ids()
        .iter()
        .zip(g.weights())
        .map(|(id, w)| json!({ "id": id, "w": w.to_string() }))
        .collect();
    let edges: Vec<Value> = g
        .edge_ids()
        .into_iter()
        .map(|(a, b)| json!([a, b]))
        .collect();
    let mut map = Map::new();
    map.insert("edges".into(), Value::Array(edges));
    map.insert("vertices".into(), Value::Array(vertices));
    Value::Object(map)
}

/// Pretty, deterministic serialization; `parse_graph` inverts it exactly.
pub fn serialize_graph(g: &WeightedGraph) -> String {
    serde_json::to_string_pretty(&graph_to_value(g)).expect("graph values always serialize")
}

/// SHA-256 of the compact canonical serialization, hex encoded.
pub fn graph_digest(g: &WeightedGraph) -> String {
    let compact = serde_json::to_string(&graph_to_value(g)).expect("graph values always serialize");
    hex::encode(Sha256::digest(compact.as_bytes()))
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT text for `g`. Nodes are labelled `id:weight`; when a core report is
/// given, core vertices are drawn filled with a double border.
pub fn export_dot(g: &WeightedGraph, annotations: Option<&CoreReport>) -> String {
    let mut out = String::from("graph G {\n");
    for (id, w) in g.ids().iter().zip(g.weights()) {
        let label = dot_quote(&format!("{id}:{w}"));
        let in_core = annotations.is_some_and(|r| r.core.contains(id));
        if in_core {
            out.push_str(&format!(
                "  {} [label={label}, style=filled, fillcolor=gold, peripheries=2];\n",
                dot_quote(id.as_str())
            ));
        } else {
            out.push_str(&format!("  {} [label={label}];\n", dot_quote(id.as_str())));
        }
    }
    for (a, b) in g.edge_ids() {
        out.push_str(&format!("  {} -- {};\n", dot_quote(a.as_str()), dot_quote(b.as_str())));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convexity::core;

    const FIGURE_ONE: &str = r#"{
        "vertices": [{"id":"v5","w":"2"},{"id":"v1","w":1},{"id":"v2","w":"1"},
                     {"id":"v3","w":"2.0"},{"id":"v4","w":2}],
        "edges": [["v1","v3"],["v3","v2"],["v2","v4"],["v3","v5"],["v4","v5"]]
    }"#;

    #[test]
    fn parses_smallest_document() {
        let g = parse_graph(r#"{"vertices":[{"id":"a","w":"1"}],"edges":[]}"#).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.weight_of("a"), Some(&Weight::from_integer(1)));
    }

    #[test]
    fn parses_figure_graph_regardless_of_order() {
        let g = parse_graph(FIGURE_ONE).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.weight_of("v3"), Some(&Weight::from_integer(2)));
        assert!(g.has_edge_ids("v2", "v3"));
    }

    #[test]
    fn reports_offending_tokens() {
        let err = |s: &str| parse_graph(s).unwrap_err().to_string();
        assert!(err(r#"{"vertices":[{"id":"a","w":"1"}],"edges":[["a","a"]]}"#).contains("self-loop on vertex `a`"));
        assert!(err(r#"{"vertices":[{"id":"a","w":"1"},{"id":"a","w":"2"}],"edges":[]}"#).contains("duplicate vertex id `a`"));
        assert!(err(r#"{"vertices":[{"id":"a","w":"1"}],"edges":[["a","q"]]}"#).contains("`q`"));
        assert!(err(r#"{"vertices":[{"id":"a","w":"-2"}],"edges":[]}"#).contains("negative weight `-2`"));
        assert!(err(r#"{"vertices":[{"id":"a","w":-2}],"edges":[]}"#).contains("negative weight `-2`"));
        assert!(err(r#"{"vertices":[{"id":"a","w":"1,5"}],"edges":[]}"#).contains("malformed weight `1,5`"));
        assert!(err(r#"{"vertices":[{"id":"a","w":1.5}],"edges":[]}"#).contains("malformed weight `1.5`"));
        assert!(err(r#"{"vertices":[{"id":"a","w":"1"},{"id":"b","w":"1"}],"edges":[["a","b"],["b","a"]]}"#).contains("duplicate edge"));
        assert!(err(r#"{"vertices":[]}"#).contains("`edges`"));
        assert!(err("not json").contains("invalid graph document"));
    }

    #[test]
    fn serialization_is_sorted_and_round_trips() {
        let g = parse_graph(FIGURE_ONE).unwrap();
        let text = serialize_graph(&g);
        let doc: Value = serde_json::from_str(&text).unwrap();
        let ids: Vec<_> = doc["vertices"].as_array().unwrap().iter().map(|v| v["id"].as_str().unwrap()).collect();
        assert_eq!(ids, ["v1", "v2", "v3", "v4", "v5"]);
        assert_eq!(doc["edges"][1], json!(["v2", "v3"]));
        assert_eq!(doc["vertices"][2]["w"], "2");
        assert_eq!(parse_graph(&text).unwrap(), g);

        let single = parse_graph(r#"{"vertices":[{"id":"a","w":"1"}],"edges":[]}"#).unwrap();
        assert_eq!(
            serde_json::to_string(&graph_to_value(&single)).unwrap(),
            r#"{"edges":[],"vertices":[{"id":"a","w":"1"}]}"#
        );
    }

    #[test]
    fn dot_marks_core_vertices() {
        let single = parse_graph(r#"{"vertices":[{"id":"a","w":"1"}],"edges":[]}"#).unwrap();
        assert_eq!(export_dot(&single, None), "graph G {\n  \"a\" [label=\"a:1\"];\n}\n");

        let g = parse_graph(FIGURE_ONE).unwrap();
        let report = core(&g).unwrap();
        let dot = export_dot(&g, Some(&report));
        assert!(dot.contains("\"v3\" [label=\"v3:2\", style=filled"));
        assert!(dot.contains("\"v2\" [label=\"v2:1\"];"));
        assert!(dot.contains("\"v4\" -- \"v5\";"));
    }

    #[test]
    fn digest_ignores_input_order() {
        let a = parse_graph(FIGURE_ONE).unwrap();
        let b = parse_graph(&serialize_graph(&a)).unwrap();
        assert_eq!(graph_digest(&a), graph_digest(&b));
        assert_eq!(graph_digest(&a).len(), 64);
    }
}
