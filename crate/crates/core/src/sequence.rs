//! Convex sequences and their embedding into regular spiders.
//!
//! A class holds `n` convex sequences of common odd length `2ℓ+1` (indexed
//! from 1) that share the middle entry `u` (position `ℓ+1`), where `u` is also
//! the smallest value across the whole class. Such sequences are
//! *bimonotone*: non-increasing up to the middle and non-decreasing after it.
//! Embedding puts sequence `j` on the path through the hub formed by legs
//! `2j-1` and `2j` of a spider with `2n` legs of length `ℓ`. Every hub-to-leaf
//! path then reads a half of some sequence outward from its minimum, so it is
//! non-decreasing and the hub lies in the core.

use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::convexity::{core, CoreReport};
use crate::graph::{GraphError, VertexId, WeightedGraph};
use crate::io::graph_to_value;
use crate::weight::{format_rational, parse_rational, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("sequence of length {0} is too short; at least 3 terms are required")]
    TooShort(usize),
    #[error("sequence length {0} is even; an odd length 2l+1 is required")]
    EvenLength(usize),
    #[error("spider needs at least one leg of length at least one (got {legs} legs of length {leg_length})")]
    BadSpider { legs: usize, leg_length: usize },
    #[error("invalid class: {}", .0.summary())]
    InvalidClass(ClassReport),
    #[error("invalid class document: {0}")]
    Document(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Convexity verdict; `first_violation` is the 1-based position of the first
/// interior term with `u[i-1] + u[i+1] < 2 u[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvexityCheck {
    pub convex: bool,
    pub first_violation: Option<usize>,
}

fn check_shape(len: usize) -> Result<(), SequenceError> {
    if len < 3 {
        Err(SequenceError::TooShort(len))
    } else if len.is_multiple_of(2) {
        Err(SequenceError::EvenLength(len))
    } else {
        Ok(())
    }
}

fn first_concavity(values: &[BigRational]) -> Option<usize> {
    values
        .windows(3)
        .position(|w| &w[0] + &w[2] < &w[1] + &w[1])
        .map(|i| i + 2)
}

pub fn is_convex_sequence(values: &[BigRational]) -> Result<ConvexityCheck, SequenceError> {
    check_shape(values.len())?;
    let first_violation = first_concavity(values);
    Ok(ConvexityCheck { convex: first_violation.is_none(), first_violation })
}

/// Non-increasing through the middle term, non-decreasing from it.
pub fn is_bimonotone(values: &[BigRational]) -> bool {
    let mid = values.len() / 2;
    values[..=mid].windows(2).all(|w| w[0] >= w[1]) && values[mid..].windows(2).all(|w| w[0] <= w[1])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexSequenceClass {
    pub hub_value: BigRational,
    pub sequences: Vec<Vec<BigRational>>,
}

fn rational_from_json(raw: &Value) -> Result<BigRational, SequenceError> {
    match raw {
        Value::String(s) => parse_rational(s).map_err(|e| SequenceError::Document(e.to_string())),
        Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(n.as_i64().unwrap().into())),
        Value::Number(n) if n.is_u64() => Ok(BigRational::from_integer(n.as_u64().unwrap().into())),
        other => Err(SequenceError::Document(format!("malformed value `{other}`"))),
    }
}

impl ConvexSequenceClass {
    pub fn new(hub_value: BigRational, sequences: Vec<Vec<BigRational>>) -> Self {
        ConvexSequenceClass { hub_value, sequences }
    }

    /// Builds a class from integer literals; convenient in tests.
    pub fn from_integers(hub_value: i64, sequences: &[&[i64]]) -> Self {
        let r = |v: i64| BigRational::from_integer(v.into());
        ConvexSequenceClass {
            hub_value: r(hub_value),
            sequences: sequences.iter().map(|s| s.iter().map(|&v| r(v)).collect()).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, SequenceError> {
        let doc: Value = serde_json::from_str(text).map_err(|e| SequenceError::Document(e.to_string()))?;
        Self::from_value(&doc)
    }

    pub fn from_value(doc: &Value) -> Result<Self, SequenceError> {
        let hub = doc
            .get("hub_value")
            .ok_or_else(|| SequenceError::Document("missing `hub_value`".into()))?;
        let sequences = doc
            .get("sequences")
            .and_then(Value::as_array)
            .ok_or_else(|| SequenceError::Document("missing `sequences` array".into()))?;
        let sequences = sequences
            .iter()
            .map(|s| {
                s.as_array()
                    .ok_or_else(|| SequenceError::Document(format!("sequence must be an array: {s}")))?
                    .iter()
                    .map(rational_from_json)
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        Ok(ConvexSequenceClass { hub_value: rational_from_json(hub)?, sequences })
    }

    pub fn to_value(&self) -> Value {
        let seqs: Vec<Vec<String>> = self
            .sequences
            .iter()
            .map(|s| s.iter().map(format_rational).collect())
            .collect();
        json!({ "hub_value": format_rational(&self.hub_value), "sequences": seqs })
    }
}

/// A single reason a class is rejected. Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassViolation {
    EmptyClass,
    NegativeHub { hub_value: String },
    BadLength { sequence: usize, length: usize },
    LengthMismatch { sequence: usize, length: usize, expected: usize },
    NotConvex { sequence: usize, index: usize },
    /// Condition (i): the middle term must equal the hub value.
    MiddleMismatch { sequence: usize, index: usize, value: String, hub_value: String },
    /// Condition (ii): the smallest value of the class must equal the hub
    /// value; points at the first occurrence of the actual minimum.
    MinimumMismatch { sequence: usize, index: usize, value: String, hub_value: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub valid: bool,
    pub leg_length: Option<usize>,
    pub violations: Vec<ClassViolation>,
    /// One entry per sequence, filled only for valid classes.
    pub bimonotone: Vec<bool>,
}

impl ClassReport {
    pub fn summary(&self) -> String {
        match self.violations.first() {
            None => "no violations".into(),
            Some(v) => {
                let first = serde_json::to_string(v).unwrap_or_default();
                match self.violations.len() {
                    1 => first,
                    n => format!("{first} and {} more", n - 1),
                }
            }
        }
    }
}

pub fn validate_class(c: &ConvexSequenceClass) -> ClassReport {
    let mut violations = Vec::new();
    let hub_text = format_rational(&c.hub_value);
    if c.sequences.is_empty() {
        violations.push(ClassViolation::EmptyClass);
    }
    if c.hub_value.is_negative() {
        violations.push(ClassViolation::NegativeHub { hub_value: hub_text.clone() });
    }
    let mut expected: Option<usize> = None;
    for (j, seq) in c.sequences.iter().enumerate() {
        let sequence = j + 1;
        if check_shape(seq.len()).is_err() {
            violations.push(ClassViolation::BadLength { sequence, length: seq.len() });
            continue;
        }
        match expected {
            Some(len) if len != seq.len() => {
                violations.push(ClassViolation::LengthMismatch { sequence, length: seq.len(), expected: len });
                continue;
            }
            _ => expected = Some(seq.len()),
        }
        if let Some(index) = first_concavity(seq) {
            violations.push(ClassViolation::NotConvex { sequence, index });
        }
        let mid = seq.len() / 2;
        if seq[mid] != c.hub_value {
            violations.push(ClassViolation::MiddleMismatch {
                sequence,
                index: mid + 1,
                value: format_rational(&seq[mid]),
                hub_value: hub_text.clone(),
            });
        }
    }
    let minimum = c
        .sequences
        .iter()
        .enumerate()
        .flat_map(|(j, s)| s.iter().enumerate().map(move |(i, v)| (v, j + 1, i + 1)))
        .min_by(|a, b| a.0.cmp(b.0));
    if let Some((value, sequence, index)) = minimum {
        if *value != c.hub_value {
            violations.push(ClassViolation::MinimumMismatch {
                sequence,
                index,
                value: format_rational(value),
                hub_value: hub_text,
            });
        }
    }
    let valid = violations.is_empty();
    ClassReport {
        valid,
        leg_length: expected.map(|len| len / 2),
        bimonotone: if valid { c.sequences.iter().map(|s| is_bimonotone(s)).collect() } else { Vec::new() },
        violations,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpiderSpec {
    pub legs: usize,
    pub leg_length: usize,
    pub hub: VertexId,
}

impl SpiderSpec {
    /// A spider whose hub is named `hub`.
    pub fn new(legs: usize, leg_length: usize) -> Self {
        SpiderSpec { legs, leg_length, hub: VertexId::new("hub").expect("non-empty") }
    }
}

/// Id of the vertex on leg `leg` (1-based) at distance `position` from the hub.
pub fn leg_vertex_id(leg: usize, position: usize) -> String {
    format!("L{leg}_{position}")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spider {
    pub graph: WeightedGraph,
    pub spec: SpiderSpec,
    /// Fewer than three legs: no vertex has degree above two.
    pub degenerate: bool,
}

impl Spider {
    pub fn summary_value(&self) -> Value {
        json!({
            "hub": self.spec.hub,
            "legs": self.spec.legs,
            "leg_length": self.spec.leg_length,
            "degenerate": self.degenerate,
        })
    }
}

fn weighted_spider(
    spec: &SpiderSpec,
    hub_weight: Weight,
    mut leg_weight: impl FnMut(usize, usize) -> Weight,
) -> Result<Spider, SequenceError> {
    if spec.legs == 0 || spec.leg_length == 0 {
        return Err(SequenceError::BadSpider { legs: spec.legs, leg_length: spec.leg_length });
    }
    let mut vertices = vec![(spec.hub.clone(), hub_weight)];
    let mut edges = Vec::with_capacity(spec.legs * spec.leg_length);
    for leg in 1..=spec.legs {
        let mut prev = spec.hub.clone();
        for pos in 1..=spec.leg_length {
            let id = VertexId::new(leg_vertex_id(leg, pos))?;
            vertices.push((id.clone(), leg_weight(leg, pos)));
            edges.push((prev, id.clone()));
            prev = id;
        }
    }
    Ok(Spider { graph: WeightedGraph::new(vertices, edges)?, spec: spec.clone(), degenerate: spec.legs < 3 })
}

/// A regular spider with all weights zero.
pub fn build_spider(spec: &SpiderSpec) -> Result<Spider, SequenceError> {
    weighted_spider(spec, Weight::zero(), |_, _| Weight::zero())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub spider: Spider,
    pub core: CoreReport,
}

impl Embedding {
    pub fn to_value(&self) -> Value {
        json!({
            "graph": graph_to_value(&self.spider.graph),
            "core_report": serde_json::to_value(&self.core).expect("reports serialize"),
            "spider": self.spider.summary_value(),
        })
    }
}

/// Weights a regular spider with `2n` legs of length `ℓ` from the class.
///
/// Sequence `j` covers legs `2j-1` and `2j`: term `i <= ℓ` sits on leg `2j-1`
/// at distance `ℓ+1-i` from the hub, term `ℓ+1` is the hub, and term
/// `i >= ℓ+2` sits on leg `2j` at distance `i-ℓ-1`.
pub fn embed(c: &ConvexSequenceClass) -> Result<Embedding, SequenceError> {
    let report = validate_class(c);
    if !report.valid {
        return Err(SequenceError::InvalidClass(report));
    }
    let ell = report.leg_length.expect("valid classes have a length");
    let to_weight = |v: &BigRational| Weight::new(v.clone()).expect("class values are at least the hub value");
    let spec = SpiderSpec::new(2 * c.sequences.len(), ell);
    let spider = weighted_spider(&spec, to_weight(&c.hub_value), |leg, pos| {
        let seq = &c.sequences[(leg - 1) / 2];
        // 0-based term index.
        let term = if leg % 2 == 1 { ell - pos } else { ell + pos };
        to_weight(&seq[term])
    })?;
    let core = core(&spider.graph).expect("spiders are connected and have leaves");
    Ok(Embedding { spider, core })
}
