#![allow(dead_code)]

use num_rational::Ratio;
use proptest::prelude::*;
use starconvex::oracle::{random_graph, GeneratorParams};
use starconvex::{Weight, WeightedGraph};

pub fn params(max_vertices: usize) -> impl Strategy<Value = GeneratorParams> {
    (1..=max_vertices, 0u32..=6, any::<u64>(), prop::bool::ANY).prop_map(move |(n, density, seed, fractional)| {
        let mut grid: Vec<Weight> = (0..4).map(Weight::from_integer).collect();
        if fractional {
            grid.extend([Weight::from_ratio(1, 3), Weight::from_ratio(5, 2)]);
        }
        GeneratorParams {
            min_vertices: 1,
            max_vertices: n,
            weight_grid: grid,
            edge_density: Ratio::new(density, 6),
            seed,
        }
    })
}

pub fn graph(max_vertices: usize) -> impl Strategy<Value = WeightedGraph> {
    params(max_vertices).prop_map(|p| random_graph(&p).unwrap())
}

pub fn tree(max_vertices: usize) -> impl Strategy<Value = WeightedGraph> {
    params(max_vertices).prop_map(|mut p| {
        p.edge_density = Ratio::new(0, 1);
        random_graph(&p).unwrap()
    })
}
