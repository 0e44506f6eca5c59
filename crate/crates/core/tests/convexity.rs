mod common;

use proptest::prelude::*;
use starconvex::convexity::{check_leaf_core_alignment, extremal_locus_check, witness_path, LeafCoreAlignment};
use starconvex::oracle::{brute_core, DEFAULT_MAX_VERTICES};
use starconvex::paths::classify_path;
use starconvex::{core, is_star_convex, CoreError, Weight, WeightedGraph};

fn build(weights: &[u64], edges: &[(usize, usize)]) -> WeightedGraph {
    let vertices = weights.iter().enumerate().map(|(i, &w)| (format!("x{i}"), Weight::from_integer(w)));
    let vertices = vertices.map(|(id, w)| (starconvex::VertexId::new(id).unwrap(), w));
    let id = |i: usize| starconvex::VertexId::new(format!("x{i}")).unwrap();
    WeightedGraph::new(vertices, edges.iter().map(|&(a, b)| (id(a), id(b)))).unwrap()
}

/// A cycle with random chords and a pendant path hanging off it: exactly one leaf.
fn one_leaf_graph() -> impl Strategy<Value = WeightedGraph> {
    (3usize..7, 1usize..4).prop_flat_map(|(cycle, tail)| {
        let n = cycle + tail;
        (Just(cycle), Just(tail), prop::collection::vec(0u64..4, n), prop::collection::vec(any::<bool>(), cycle * cycle))
    })
    .prop_map(|(cycle, tail, weights, chords)| {
        let mut edges: Vec<(usize, usize)> = (0..cycle).map(|i| (i, (i + 1) % cycle)).collect();
        for a in 0..cycle {
            for b in a + 2..cycle {
                if chords[a * cycle + b] && !(a == 0 && b == cycle - 1) {
                    edges.push((a, b));
                }
            }
        }
        let mut prev = 0;
        for t in cycle..cycle + tail {
            edges.push((prev, t));
            prev = t;
        }
        build(&weights, &edges)
    })
}

proptest! {
    #[test]
    fn core_matches_brute_force(g in common::graph(8)) {
        match (core(&g), brute_core(&g, DEFAULT_MAX_VERTICES)) {
            (Ok(fast), Ok(brute)) => {
                prop_assert_eq!(&fast.core, &brute);
                prop_assert_eq!(fast.star_convex, !brute.is_empty());
            }
            (Err(CoreError::NoLeaves), Err(_)) => {}
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn witnesses_are_monotone(g in common::graph(9)) {
        if let Ok(report) = core(&g) {
            for (u, per_leaf) in &report.witnesses {
                prop_assert!(report.core.contains(u));
                prop_assert_eq!(per_leaf.len(), g.leaves().len());
                for (leaf, &d) in per_leaf {
                    let path = witness_path(&g, u.as_str(), leaf.as_str(), d).unwrap();
                    prop_assert!(classify_path(&g, &path).unwrap().directions.contains(d));
                }
            }
        }
    }

    #[test]
    fn graphs_with_one_leaf_are_star_convex(g in one_leaf_graph()) {
        prop_assert_eq!(g.leaves().len(), 1);
        let leaf = g.leaves().iter().next().unwrap().clone();
        let report = core(&g).unwrap();
        prop_assert!(report.star_convex);
        prop_assert!(report.contains(leaf.as_str()));
    }

    #[test]
    fn extremal_equalities_hold_on_star_convex_trees(t in common::tree(10)) {
        if t.vertex_count() >= 2 && is_star_convex(&t).unwrap() {
            let r = extremal_locus_check(&t).unwrap();
            prop_assert!(r.holds, "{:?}", r);
            prop_assert_eq!(&r.max_all, &r.max_leaves_or_core);
            prop_assert_eq!(&r.min_all, &r.min_leaves_or_core);
        }
    }

    #[test]
    fn alignment_directions_are_admissible(t in common::tree(10)) {
        if t.vertex_count() < 2 || !is_star_convex(&t).unwrap() {
            return Ok(());
        }
        let report = core(&t).unwrap();
        for u in report.core.iter().filter(|u| t.leaves().contains(u.as_str())) {
            if let LeafCoreAlignment::Aligned { direction, admissible } = check_leaf_core_alignment(&t, u.as_str()).unwrap() {
                prop_assert!(admissible.contains(direction));
                for leaf in t.leaves().iter() {
                    prop_assert!(witness_path(&t, u.as_str(), leaf.as_str(), direction).is_some());
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn stars_are_star_convex(weights in (3usize..=10).prop_flat_map(|tips| prop::collection::vec(0u64..20, tips + 1))) {
        let edges: Vec<(usize, usize)> = (1..weights.len()).map(|t| (0, t)).collect();
        let star = build(&weights, &edges);
        let report = core(&star).unwrap();
        prop_assert!(report.star_convex);
        prop_assert!(report.contains("x0"));
    }
}
