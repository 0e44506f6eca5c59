//! Seeded property campaigns and the structured generators they draw from.
//!
//! Every generator is a pure function of its seed. A campaign runs each
//! requested property once per seed and reports one [`Finding`] per run.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::convexity::{check_leaf_core_alignment, core, extremal_locus_check, is_star_convex, LeafCoreAlignment};
use crate::fixtures;
use crate::graph::{VertexId, WeightedGraph};
use crate::io::graph_to_value;
use crate::ops::{graph_union, overlap_analysis, subgraph_core_probe, ProbeOutcome};
use crate::oracle::{brute_core, random_convex_class, random_graph, GeneratorParams, DEFAULT_MAX_VERTICES};
use crate::sequence::{embed, leg_vertex_id, validate_class, ClassViolation, ConvexSequenceClass};
use crate::weight::Weight;
use crate::witness::{extract_witness_tree, steiner_subtree, verify_witness, WitnessTree};

const MAX_ATTEMPTS: u64 = 10_000;

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(salt);
    rng
}

/// Draws graphs from `base` with fresh sub-seeds until `accept` holds.
fn rejection_sample(
    base: &GeneratorParams,
    salt: u64,
    accept: impl Fn(&WeightedGraph) -> bool,
) -> (WeightedGraph, GeneratorParams) {
    let mut rng = rng_for(base.seed, salt);
    for _ in 0..MAX_ATTEMPTS {
        let params = base.with_seed(rng.gen());
        let g = random_graph(&params).expect("generator parameters are valid");
        if accept(&g) {
            return (g, params);
        }
    }
    panic!("no acceptable graph after {MAX_ATTEMPTS} draws from seed {}", base.seed)
}

fn star_convex_with_leaves(g: &WeightedGraph, min_leaves: usize) -> bool {
    g.leaves().len() >= min_leaves && is_star_convex(g).unwrap_or(false)
}

/// A star-convex graph with at least two leaves (3 to 9 vertices, weights 0..=3).
pub fn star_convex_graph(seed: u64) -> (WeightedGraph, GeneratorParams) {
    let base = GeneratorParams::new(3, 9, &[0, 1, 2, 3], (1, 5), seed);
    rejection_sample(&base, 1, |g| star_convex_with_leaves(g, 2))
}

/// A star-convex tree (2 to 10 vertices, weights 0..=3).
pub fn star_convex_tree(seed: u64) -> (WeightedGraph, GeneratorParams) {
    let base = GeneratorParams::new(2, 10, &[0, 1, 2, 3], (0, 1), seed);
    rejection_sample(&base, 2, |g| star_convex_with_leaves(g, 1))
}

fn relabel(g: &WeightedGraph, name: impl Fn(&VertexId) -> VertexId, shift: &BigRational) -> WeightedGraph {
    let vertices = g
        .ids()
        .iter()
        .zip(g.weights())
        .map(|(id, w)| (name(id), Weight::new(w.value() + shift).expect("shifts keep weights non-negative")));
    let edges = g.edges().map(|(a, b)| (name(g.id(a)), name(g.id(b))));
    WeightedGraph::new(vertices, edges).expect("relabelling preserves simplicity")
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> &'a T {
    items.choose(rng).expect("non-empty")
}

/// Two star-convex graphs whose cores share a vertex and whose union has a
/// leaf. Even seeds glue two independent graphs at one core vertex each
/// (after shifting weights so the glued vertex agrees); odd seeds perturb
/// one edge of a graph and keep the pair if the cores still meet.
pub fn shared_core_pair(seed: u64) -> (WeightedGraph, WeightedGraph) {
    let mut rng = rng_for(seed, 3);
    for _ in 0..MAX_ATTEMPTS {
        let (g1, _) = star_convex_graph(rng.gen());
        let c1: Vec<VertexId> = core(&g1).expect("star-convex").core.into_iter().collect();
        let pair = if seed.is_multiple_of(2) {
            let (g2, _) = star_convex_graph(rng.gen());
            let c2: Vec<VertexId> = core(&g2).expect("star-convex").core.into_iter().collect();
            let (a, b) = (pick(&mut rng, &c1).clone(), pick(&mut rng, &c2).clone());
            let (wa, wb) = (g1.weight_of(a.as_str()).unwrap().value().clone(), g2.weight_of(b.as_str()).unwrap().value().clone());
            let top = wa.clone().max(wb.clone());
            let left = relabel(&g1, |id| VertexId::new(format!("a{id}")).unwrap(), &(&top - &wa));
            let glued = VertexId::new(format!("a{a}")).unwrap();
            let right = relabel(
                &g2,
                |id| if *id == b { glued.clone() } else { VertexId::new(format!("b{id}")).unwrap() },
                &(&top - &wb),
            );
            (left, right)
        } else {
            let n = g1.vertex_count();
            let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if x == y {
                continue;
            }
            let mut edges: Vec<(VertexId, VertexId)> = g1.edge_ids();
            let (ix, iy) = (g1.id(x).clone(), g1.id(y).clone());
            if g1.has_edge(x, y) {
                edges.retain(|(a, b)| !((*a == ix && *b == iy) || (*a == iy && *b == ix)));
            } else {
                edges.push((ix, iy));
            }
            let vertices = g1.ids().iter().cloned().zip(g1.weights().iter().cloned());
            let g2 = WeightedGraph::new(vertices, edges).expect("perturbation stays simple");
            (g1, g2)
        };
        let (a, b) = &pair;
        if !b.is_connected() || !star_convex_with_leaves(b, 1) {
            continue;
        }
        let shared = core(a).unwrap().core.intersection(&core(b).unwrap().core).next().is_some();
        let union_has_leaf = graph_union(a, b).map(|u| !u.leaves().is_empty()).unwrap_or(false);
        if shared && union_has_leaf {
            return pair;
        }
    }
    panic!("no shared-core pair after {MAX_ATTEMPTS} attempts from seed {seed}")
}

fn random_spanning_tree_edges(g: &WeightedGraph, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.shuffle(rng);
    let mut comp: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(comp: &mut [usize], v: usize) -> usize {
        let mut r = v;
        while comp[r] != r {
            r = comp[r];
        }
        comp[v] = r;
        r
    }
    edges
        .into_iter()
        .filter(|&(a, b)| {
            let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
            comp[ra] = rb;
            ra != rb
        })
        .collect()
}

fn graph_on(g: &WeightedGraph, keep: &[bool], edges: &[(usize, usize)]) -> WeightedGraph {
    let vertices = (0..g.vertex_count()).filter(|&v| keep[v]).map(|v| (g.id(v).clone(), g.weight(v).clone()));
    let edges = edges.iter().filter(|&&(a, b)| keep[a] && keep[b]).map(|&(a, b)| (g.id(a).clone(), g.id(b).clone()));
    WeightedGraph::new(vertices, edges).expect("subgraphs stay simple")
}

/// A star-convex graph `g1` contained in a star-convex graph `g2`: a random
/// spanning tree of `g2`, plus each other edge with probability one half,
/// minus some of the resulting leaves.
pub fn nested_pair(seed: u64) -> (WeightedGraph, WeightedGraph) {
    let mut rng = rng_for(seed, 4);
    for _ in 0..MAX_ATTEMPTS {
        let (host, _) = star_convex_graph(rng.gen());
        let tree = random_spanning_tree_edges(&host, &mut rng);
        let mut edges = tree.clone();
        edges.extend(host.edges().filter(|e| !tree.contains(e)).filter(|_| rng.gen_bool(0.5)));
        let mut keep = vec![true; host.vertex_count()];
        let staged = graph_on(&host, &keep, &edges);
        for leaf in staged.leaf_indices() {
            if rng.gen_bool(0.5) {
                keep[leaf] = false;
            }
        }
        let sub = graph_on(&host, &keep, &edges);
        if sub.vertex_count() >= 2 && sub.is_connected() && star_convex_with_leaves(&sub, 1) {
            return (sub, host);
        }
    }
    panic!("no nested pair after {MAX_ATTEMPTS} attempts from seed {seed}")
}

/// How [`invalid_class`] breaks a valid class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassMutation {
    /// Raise one middle term above the hub value.
    Middle,
    /// Add a linear tilt that pushes one end below the hub value.
    BelowHub,
    /// Lift one interior term enough to make the sequence concave there.
    Concavity,
}

impl ClassMutation {
    pub const ALL: [ClassMutation; 3] = [ClassMutation::Middle, ClassMutation::BelowHub, ClassMutation::Concavity];
}

/// A valid class with one sequence broken by `mutation`, together with the
/// violation a validator must report.
pub fn invalid_class(seed: u64, mutation: ClassMutation) -> (ConvexSequenceClass, ClassViolation) {
    let mut rng = rng_for(seed, 5);
    let (n, ell) = (rng.gen_range(1..=5), rng.gen_range(1..=6));
    let mut class = random_convex_class(n, ell, rng.gen());
    let j = rng.gen_range(0..n);
    let hub = class.hub_value.clone();
    let seq = &mut class.sequences[j];
    let text = crate::weight::format_rational;
    let expected = match mutation {
        ClassMutation::Middle => {
            seq[ell] = &hub + BigRational::one();
            ClassViolation::MiddleMismatch { sequence: j + 1, index: ell + 1, value: text(&seq[ell]), hub_value: text(&hub) }
        }
        ClassMutation::BelowHub => {
            // Slope steep enough that the last term lands strictly below the hub.
            let slope = (&hub - &seq[2 * ell]) / BigRational::from_integer(ell.into()) - BigRational::one();
            for (i, v) in seq.iter_mut().enumerate() {
                *v += &slope * BigRational::from_integer((i as i64 - ell as i64).into());
            }
            let (index, value) = seq
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)))
                .map(|(i, v)| (i + 1, text(v)))
                .unwrap();
            ClassViolation::MinimumMismatch { sequence: j + 1, index, value, hub_value: text(&hub) }
        }
        ClassMutation::Concavity => {
            let i = rng.gen_range(1..2 * ell);
            let gap = &seq[i - 1] + &seq[i + 1] - &seq[i] - &seq[i];
            seq[i] += gap.abs() + BigRational::one();
            ClassViolation::NotConvex { sequence: j + 1, index: i + 1 }
        }
    };
    (class, expected)
}

/// Properties a campaign can exercise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    CoreOracle,
    Witness,
    WitnessConverse,
    Union,
    LeafCoreAlignment,
    Extremal,
    Embed,
    SubgraphCore,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::CoreOracle,
        Property::Witness,
        Property::WitnessConverse,
        Property::Union,
        Property::LeafCoreAlignment,
        Property::Extremal,
        Property::Embed,
        Property::SubgraphCore,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::CoreOracle => "core-oracle",
            Property::Witness => "witness",
            Property::WitnessConverse => "witness-converse",
            Property::Union => "union",
            Property::LeafCoreAlignment => "leaf-core-alignment",
            Property::Extremal => "extremal",
            Property::Embed => "embed",
            Property::SubgraphCore => "subgraph-core",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown property `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    /// The property was vacuous for this input.
    Skip,
    Fail,
    /// A probed conjecture was falsified.
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Finding {
    pub seed: Option<u64>,
    pub params: Value,
    pub property: String,
    pub verdict: Verdict,
    pub witness: Value,
}

impl Finding {
    pub fn is_failure(&self) -> bool {
        matches!(self.verdict, Verdict::Fail | Verdict::Counterexample)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_value(self).expect("findings serialize").to_string()
    }
}

fn ids(set: &BTreeSet<VertexId>) -> Value {
    json!(set.iter().map(VertexId::as_str).collect::<Vec<_>>())
}

fn seeded(seed: u64, params: Value, property: Property, verdict: Verdict, witness: Value) -> Finding {
    Finding { seed: Some(seed), params, property: property.name().to_string(), verdict, witness }
}

fn pass_or_fail(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Fast core against the brute-force oracle on a random graph with at most
/// eight vertices.
pub fn check_core_oracle(seed: u64) -> Finding {
    let params = GeneratorParams::new(1, 8, &[0, 1, 2, 3], (1, 6), seed);
    let g = random_graph(&params).expect("valid parameters");
    let (verdict, witness) = match (core(&g), brute_core(&g, DEFAULT_MAX_VERTICES)) {
        (Ok(fast), Ok(brute)) if fast.core == brute => (Verdict::Pass, json!({})),
        (Ok(fast), Ok(brute)) => (
            Verdict::Fail,
            json!({"graph": graph_to_value(&g), "fast": ids(&fast.core), "brute": ids(&brute)}),
        ),
        (Err(_), Err(_)) => (Verdict::Skip, json!({"reason": "graph has no leaf vertices"})),
        (fast, brute) => (
            Verdict::Fail,
            json!({"graph": graph_to_value(&g), "fast": format!("{fast:?}"), "brute": format!("{brute:?}")}),
        ),
    };
    seeded(seed, params.to_value(), Property::CoreOracle, verdict, witness)
}

/// Everything the witness round trip must satisfy, as a list of failures.
pub fn witness_defects(g: &WeightedGraph, w: &WitnessTree) -> Vec<String> {
    let mut defects = Vec::new();
    let verdict = verify_witness(g, w);
    if !verdict.accepted {
        defects.push(format!("rejected: {:?}", verdict.failure));
    }
    if let Some(detail) = w.tree.subgraph_mismatch(g) {
        defects.push(format!("not a subgraph: {detail}"));
    }
    if !w.tree.is_tree() || w.tree.edge_count() + 1 != w.tree.vertex_count() {
        defects.push("not a tree".into());
    }
    if w.tree.leaves().as_set() != g.leaves().as_set() {
        defects.push("leaf sets differ".into());
    }
    match core(&w.tree) {
        Ok(report) if report.contains(w.root.as_str()) => {}
        _ => defects.push(format!("root {} not in the tree's core", w.root)),
    }
    defects
}

pub fn check_witness(seed: u64) -> Finding {
    let (g, params) = star_convex_graph(seed);
    let (verdict, witness) = match extract_witness_tree(&g, None) {
        Ok(w) => {
            let defects = witness_defects(&g, &w);
            if defects.is_empty() {
                (Verdict::Pass, json!({}))
            } else {
                (Verdict::Fail, json!({"graph": graph_to_value(&g), "tree": w.to_value(), "defects": defects}))
            }
        }
        Err(e) => (Verdict::Fail, json!({"graph": graph_to_value(&g), "error": e.to_string()})),
    };
    seeded(seed, params.to_value(), Property::Witness, verdict, witness)
}

/// Candidate witnesses that are not built to succeed: the Steiner trim of a
/// random spanning tree of an arbitrary random graph. Whenever one is
/// accepted the host must be star-convex.
pub fn check_witness_converse(seed: u64) -> Finding {
    let params = GeneratorParams::new(3, 9, &[0, 1, 2, 3], (1, 5), seed);
    let g = random_graph(&params).expect("valid parameters");
    let leaves: Vec<VertexId> = g.leaves().iter().cloned().collect();
    if leaves.len() < 2 {
        return seeded(seed, params.to_value(), Property::WitnessConverse, Verdict::Skip, json!({"reason": "fewer than two leaves"}));
    }
    let mut rng = rng_for(seed, 6);
    let all = vec![true; g.vertex_count()];
    let spanning = graph_on(&g, &all, &random_spanning_tree_edges(&g, &mut rng));
    let tree = steiner_subtree(&spanning, &leaves).expect("spanning trees contain every leaf");
    let root = tree.id(rng.gen_range(0..tree.vertex_count())).clone();
    let leaf_map = tree.leaves().into_set();
    let candidate = WitnessTree { tree, root, leaf_map };
    let (verdict, witness) = if !verify_witness(&g, &candidate).accepted {
        (Verdict::Skip, json!({"reason": "candidate rejected"}))
    } else {
        let ok = is_star_convex(&g).unwrap_or(false);
        (pass_or_fail(ok), if ok { json!({}) } else { json!({"graph": graph_to_value(&g), "tree": candidate.to_value()}) })
    };
    seeded(seed, params.to_value(), Property::WitnessConverse, verdict, witness)
}

pub fn check_union(seed: u64) -> Finding {
    let (g1, g2) = shared_core_pair(seed);
    let (verdict, witness) = match overlap_analysis(&g1, &g2) {
        Ok(r) if r.union_star_convex && !r.core_intersection.is_empty() => (Verdict::Pass, json!({})),
        other => (
            Verdict::Fail,
            json!({"g1": graph_to_value(&g1), "g2": graph_to_value(&g2), "analysis": format!("{other:?}")}),
        ),
    };
    seeded(seed, json!({"generator": "shared_core_pair", "seed": seed}), Property::Union, verdict, witness)
}

pub fn check_leaf_core(seed: u64) -> Finding {
    let (t, params) = star_convex_tree(seed);
    let report = core(&t).expect("generated trees are valid");
    let candidates: Vec<&VertexId> = report.core.iter().filter(|v| t.index_of(v.as_str()).map(|i| t.degree(i)) == Some(1)).collect();
    let mut verdict = if candidates.is_empty() { Verdict::Skip } else { Verdict::Pass };
    let mut witness = json!({});
    for u in candidates {
        match check_leaf_core_alignment(&t, u.as_str()) {
            Ok(LeafCoreAlignment::Aligned { .. }) => {}
            Ok(LeafCoreAlignment::Violation { leaf }) => {
                verdict = Verdict::Counterexample;
                witness = json!({"tree": graph_to_value(&t), "core_leaf": u, "opposed_leaf": leaf});
                break;
            }
            Err(e) => {
                verdict = Verdict::Fail;
                witness = json!({"tree": graph_to_value(&t), "vertex": u, "error": e.to_string()});
                break;
            }
        }
    }
    seeded(seed, params.to_value(), Property::LeafCoreAlignment, verdict, witness)
}

pub fn check_extremal(seed: u64) -> Finding {
    let (t, params) = star_convex_tree(seed);
    let (verdict, witness) = match extremal_locus_check(&t) {
        Ok(r) if r.holds => (Verdict::Pass, json!({})),
        other => (Verdict::Fail, json!({"tree": graph_to_value(&t), "report": format!("{other:?}")})),
    };
    seeded(seed, params.to_value(), Property::Extremal, verdict, witness)
}

/// Multiset of weights on legs `2j-1`, `2j` and the hub for every sequence `j`,
/// compared with the sequence's own entries.
pub fn weight_conservation_holds(class: &ConvexSequenceClass, spider: &WeightedGraph) -> bool {
    let ell = class.sequences[0].len() / 2;
    class.sequences.iter().enumerate().all(|(j, seq)| {
        let mut placed: Vec<BigRational> = vec![spider.weight_of("hub").expect("hub").value().clone()];
        for leg in [2 * j + 1, 2 * j + 2] {
            for pos in 1..=ell {
                placed.push(spider.weight_of(&leg_vertex_id(leg, pos)).expect("leg vertex").value().clone());
            }
        }
        let mut expected = seq.clone();
        placed.sort();
        expected.sort();
        placed == expected
    })
}

pub fn check_embed(seed: u64) -> Finding {
    let mut rng = rng_for(seed, 7);
    let (n, ell) = (rng.gen_range(1..=5), rng.gen_range(1..=6));
    let class = random_convex_class(n, ell, seed);
    let params = json!({"n": n, "ell": ell, "seed": seed});
    let mut defects = Vec::new();
    if !validate_class(&class).valid {
        defects.push("generated class is invalid".to_string());
    }
    match embed(&class) {
        Ok(e) => {
            let g = &e.spider.graph;
            if e.spider.spec.legs != 2 * n || e.spider.spec.leg_length != ell || g.vertex_count() != 2 * n * ell + 1 {
                defects.push("spider shape".into());
            }
            if !e.core.contains("hub") {
                defects.push("hub not in core".into());
            }
            if !weight_conservation_holds(&class, g) {
                defects.push("weights not conserved".into());
            }
        }
        Err(err) => defects.push(err.to_string()),
    }
    for mutation in ClassMutation::ALL {
        let (bad, expected) = invalid_class(seed, mutation);
        let report = validate_class(&bad);
        if report.valid || !report.violations.contains(&expected) || embed(&bad).is_ok() {
            defects.push(format!("{mutation:?} not localized: expected {expected:?}, got {:?}", report.violations));
        }
    }
    let verdict = pass_or_fail(defects.is_empty());
    let witness = if defects.is_empty() { json!({}) } else { json!({"class": class.to_value(), "defects": defects}) };
    seeded(seed, params, Property::Embed, verdict, witness)
}

fn probe_finding(seed: Option<u64>, params: Value, g1: &WeightedGraph, g2: &WeightedGraph) -> Finding {
    let (verdict, witness) = match subgraph_core_probe(g1, g2) {
        Ok(ProbeOutcome::Pass) => (Verdict::Pass, json!({})),
        Ok(ProbeOutcome::Counterexample { vertex, failing_leaf }) => (
            Verdict::Counterexample,
            json!({"subgraph": graph_to_value(g1), "host": graph_to_value(g2), "vertex": vertex, "failing_leaf": failing_leaf}),
        ),
        Err(e) => (Verdict::Fail, json!({"error": e.to_string()})),
    };
    Finding { seed, params, property: Property::SubgraphCore.name().to_string(), verdict, witness }
}

pub fn check_subgraph_core(seed: u64) -> Finding {
    let (g1, g2) = nested_pair(seed);
    probe_finding(Some(seed), json!({"generator": "nested_pair", "seed": seed}), &g1, &g2)
}

pub fn run_property(property: Property, seed: u64) -> Finding {
    match property {
        Property::CoreOracle => check_core_oracle(seed),
        Property::Witness => check_witness(seed),
        Property::WitnessConverse => check_witness_converse(seed),
        Property::Union => check_union(seed),
        Property::LeafCoreAlignment => check_leaf_core(seed),
        Property::Extremal => check_extremal(seed),
        Property::Embed => check_embed(seed),
        Property::SubgraphCore => check_subgraph_core(seed),
    }
}

/// Runs every property over every seed. The subgraph-core campaign starts
/// with the fixed nested path pair so a falsifying input is always probed.
pub fn run_campaign(properties: &[Property], seeds: impl IntoIterator<Item = u64> + Clone) -> Vec<Finding> {
    let mut findings = Vec::new();
    for &property in properties {
        if property == Property::SubgraphCore {
            let (g1, g2) = fixtures::nested_path_pair();
            findings.push(probe_finding(None, json!({"fixture": "nested_path_pair"}), &g1, &g2));
        }
        findings.extend(seeds.clone().into_iter().map(|seed| run_property(property, seed)));
    }
    findings
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>(), Ok(p));
        }
        assert!("bogus".parse::<Property>().is_err());
    }

    #[test]
    fn generators_meet_their_contracts() {
        for seed in 0..20 {
            let (g, params) = star_convex_graph(seed);
            assert!(star_convex_with_leaves(&g, 2));
            assert_eq!(random_graph(&params).unwrap(), g);
            let (t, _) = star_convex_tree(seed);
            assert!(t.is_tree() && is_star_convex(&t).unwrap());
            let (a, b) = shared_core_pair(seed);
            assert!(!overlap_analysis(&a, &b).unwrap().core_intersection.is_empty());
            let (sub, host) = nested_pair(seed);
            assert!(sub.is_subgraph_of(&host));
        }
    }

    #[test]
    fn mutations_are_localized() {
        for seed in 0..50 {
            for m in ClassMutation::ALL {
                let (bad, expected) = invalid_class(seed, m);
                let report = validate_class(&bad);
                assert!(report.violations.contains(&expected), "{seed} {m:?}: {:?} vs {expected:?}", report.violations);
            }
        }
    }

    #[test]
    fn campaign_includes_the_fixture_counterexample() {
        let findings = run_campaign(&[Property::SubgraphCore], 0..3);
        assert_eq!(findings.len(), 4);
        assert_eq!(findings[0].seed, None);
        assert_eq!(findings[0].verdict, Verdict::Counterexample);
    }

    #[test]
    fn campaigns_are_deterministic() {
        let lines = |f: Vec<Finding>| f.iter().map(Finding::to_json_line).collect::<Vec<_>>();
        assert_eq!(lines(run_campaign(&Property::ALL, 0..4)), lines(run_campaign(&Property::ALL, 0..4)));
    }
}
