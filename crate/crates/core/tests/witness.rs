mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use starconvex::fuzz::{star_convex_graph, witness_defects};
use starconvex::witness::{steiner_subtree, WitnessTree};
use starconvex::{core, extract_witness_tree, is_star_convex, verify_witness, VertexId, WeightedGraph};

/// Repeatedly deletes non-terminal vertices of degree at most one.
fn prune(t: &WeightedGraph, terminals: &BTreeSet<VertexId>) -> (BTreeSet<VertexId>, usize) {
    let mut alive: BTreeSet<usize> = (0..t.vertex_count()).collect();
    loop {
        let doomed: Vec<usize> = alive
            .iter()
            .copied()
            .filter(|&v| !terminals.contains(t.id(v)))
            .filter(|&v| t.neighbors(v).iter().filter(|n| alive.contains(n)).count() <= 1)
            .collect();
        if doomed.is_empty() {
            break;
        }
        for v in doomed {
            alive.remove(&v);
        }
    }
    let edges = t.edges().filter(|(a, b)| alive.contains(a) && alive.contains(b)).count();
    (alive.into_iter().map(|v| t.id(v).clone()).collect(), edges)
}

proptest! {
    #[test]
    fn extraction_round_trips(seed in any::<u64>()) {
        let (g, _) = star_convex_graph(seed);
        let w = extract_witness_tree(&g, None).unwrap();
        prop_assert!(witness_defects(&g, &w).is_empty(), "{:?}", witness_defects(&g, &w));
        prop_assert_eq!(w.tree.edge_count() + 1, w.tree.vertex_count());
    }

    #[test]
    fn every_core_vertex_can_root_a_witness(seed in any::<u64>()) {
        let (g, _) = star_convex_graph(seed);
        for root in core(&g).unwrap().core {
            let w = extract_witness_tree(&g, Some(root.as_str())).unwrap();
            prop_assert!(witness_defects(&g, &w).is_empty());
        }
    }

    #[test]
    fn accepted_candidates_certify_the_host(g in common::graph(8), pick in any::<prop::sample::Index>()) {
        // Any spanning tree trimmed to the host's leaves is a candidate.
        let leaves: Vec<VertexId> = g.leaves().iter().cloned().collect();
        if leaves.len() < 2 {
            return Ok(());
        }
        let parents = g.bfs_parents(pick.index(g.vertex_count()));
        let edges = (0..g.vertex_count()).filter_map(|v| parents[v].map(|p| (g.id(p).clone(), g.id(v).clone())));
        let spanning = WeightedGraph::new(g.ids().iter().cloned().zip(g.weights().iter().cloned()), edges).unwrap();
        let tree = steiner_subtree(&spanning, &leaves).unwrap();
        let candidate = WitnessTree { root: tree.id(0).clone(), leaf_map: tree.leaves().into_set(), tree };
        if verify_witness(&g, &candidate).accepted {
            prop_assert!(is_star_convex(&g).unwrap());
        }
    }

    #[test]
    fn steiner_subtree_matches_leaf_pruning(t in common::tree(12), picks in prop::collection::vec(any::<prop::sample::Index>(), 2..5)) {
        let terminals: BTreeSet<VertexId> = picks.iter().map(|i| t.id(i.index(t.vertex_count())).clone()).collect();
        if terminals.len() < 2 {
            return Ok(());
        }
        let names: Vec<&str> = terminals.iter().map(VertexId::as_str).collect();
        let sub = steiner_subtree(&t, &names).unwrap();
        let (vertices, edges) = prune(&t, &terminals);
        prop_assert_eq!(sub.ids().iter().cloned().collect::<BTreeSet<_>>(), vertices);
        prop_assert_eq!(sub.edge_count(), edges);
        prop_assert!(sub.leaves().iter().all(|l| terminals.contains(l)));
    }
}
