//! Brute-force ground truth and seeded generators.
//!
//! The oracle follows the definitions literally: it enumerates simple paths
//! and tests each one for monotonicity. It shares no code with the fast
//! reachability-based routines beyond reading vertices, weights and edges
//! off a [`WeightedGraph`].

use std::collections::{BTreeSet, HashSet};

use num_rational::{BigRational, Ratio};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{VertexId, WeightedGraph};
use crate::sequence::ConvexSequenceClass;
use crate::weight::Weight;

/// Largest graph the exhaustive routines accept unless told otherwise.
pub const DEFAULT_MAX_VERTICES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {vertices} vertices; exhaustive enumeration is limited to {bound}")]
    TooLarge { vertices: usize, bound: usize },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("graph has no leaf vertices")]
    NoLeaves,
    #[error("weight grid is empty")]
    EmptyGrid,
    #[error("vertex count range {0}..={1} is empty")]
    EmptyRange(usize, usize),
    #[error("edge density {0} is outside [0, 1]")]
    BadDensity(String),
}

/// Plain adjacency lists rebuilt from the edge list.
fn adjacency(g: &WeightedGraph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for (a, b) in g.edges() {
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

fn paths_between(adj: &[Vec<usize>], from: usize, to: usize) -> Vec<Vec<usize>> {
    fn dfs(adj: &[Vec<usize>], to: usize, path: &mut Vec<usize>, on_path: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let cur = *path.last().unwrap();
        if cur == to {
            out.push(path.clone());
            return;
        }
        for &n in &adj[cur] {
            if !on_path[n] {
                on_path[n] = true;
                path.push(n);
                dfs(adj, to, path, on_path, out);
                path.pop();
                on_path[n] = false;
            }
        }
    }
    let mut on_path = vec![false; adj.len()];
    on_path[from] = true;
    let mut out = Vec::new();
    dfs(adj, to, &mut vec![from], &mut on_path, &mut out);
    out.sort();
    out
}

fn check_size(g: &WeightedGraph, bound: usize) -> Result<(), OracleError> {
    if g.vertex_count() > bound {
        Err(OracleError::TooLarge { vertices: g.vertex_count(), bound })
    } else {
        Ok(())
    }
}

/// All simple paths from `from` to `to`, lexicographically ordered by id
/// sequence. `from == to` yields the single one-vertex path.
pub fn enumerate_simple_paths(
    g: &WeightedGraph,
    from: &str,
    to: &str,
    bound: usize,
) -> Result<Vec<Vec<VertexId>>, OracleError> {
    check_size(g, bound)?;
    let find = |id: &str| g.index_of(id).ok_or_else(|| OracleError::UnknownVertex(id.to_string()));
    let (a, b) = (find(from)?, find(to)?);
    Ok(paths_between(&adjacency(g), a, b)
        .into_iter()
        .map(|p| p.into_iter().map(|i| g.id(i).clone()).collect())
        .collect())
}

fn weights_monotone(weights: &[&Weight]) -> bool {
    let rising = weights.windows(2).all(|w| w[0] <= w[1]);
    let falling = weights.windows(2).all(|w| w[0] >= w[1]);
    rising || falling
}

/// The core by definition: every vertex having, for each leaf, some
/// enumerated simple path to that leaf that is monotone in some direction.
pub fn brute_core(g: &WeightedGraph, bound: usize) -> Result<BTreeSet<VertexId>, OracleError> {
    check_size(g, bound)?;
    let adj = adjacency(g);
    let leaves: Vec<usize> = (0..adj.len()).filter(|&v| adj[v].len() == 1).collect();
    if leaves.is_empty() {
        return Err(OracleError::NoLeaves);
    }
    let covers = |u: usize, leaf: usize| {
        paths_between(&adj, u, leaf).iter().any(|p| {
            let ws: Vec<&Weight> = p.iter().map(|&i| g.weight(i)).collect();
            weights_monotone(&ws)
        })
    };
    Ok((0..adj.len())
        .filter(|&u| leaves.iter().all(|&leaf| covers(u, leaf)))
        .map(|u| g.id(u).clone())
        .collect())
}

/// Parameters for [`random_graph`]. Identical parameters give identical graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorParams {
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub weight_grid: Vec<Weight>,
    /// Probability of including each non-tree vertex pair.
    pub edge_density: Ratio<u32>,
    pub seed: u64,
}

impl GeneratorParams {
    pub fn new(min_vertices: usize, max_vertices: usize, grid: &[u64], density: (u32, u32), seed: u64) -> Self {
        GeneratorParams {
            min_vertices,
            max_vertices,
            weight_grid: grid.iter().map(|&w| Weight::from_integer(w)).collect(),
            edge_density: Ratio::new(density.0, density.1),
            seed,
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        GeneratorParams { seed, ..self.clone() }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "vertex_count_range": [self.min_vertices, self.max_vertices],
            "weight_grid": self.weight_grid.iter().map(Weight::to_string).collect::<Vec<_>>(),
            "edge_density": self.edge_density.to_string(),
            "seed": self.seed,
        })
    }
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Vertex ids `v0, v1, ...`.
pub fn numbered_id(i: usize) -> VertexId {
    VertexId::new(format!("v{i}")).expect("non-empty")
}

/// A connected simple graph: a random spanning tree plus each remaining
/// vertex pair independently with probability `edge_density`.
pub fn random_graph(p: &GeneratorParams) -> Result<WeightedGraph, OracleError> {
    if p.weight_grid.is_empty() {
        return Err(OracleError::EmptyGrid);
    }
    if p.min_vertices == 0 || p.min_vertices > p.max_vertices {
        return Err(OracleError::EmptyRange(p.min_vertices, p.max_vertices));
    }
    if *p.edge_density.denom() == 0 || p.edge_density.numer() > p.edge_density.denom() {
        return Err(OracleError::BadDensity(p.edge_density.to_string()));
    }
    let mut rng = rng_for(p.seed);
    let n = rng.gen_range(p.min_vertices..=p.max_vertices);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut edges: HashSet<(usize, usize)> = HashSet::new();
    for i in 1..n {
        let (a, b) = (order[i], order[rng.gen_range(0..i)]);
        edges.insert((a.min(b), a.max(b)));
    }
    let (num, den) = (*p.edge_density.numer(), *p.edge_density.denom());
    for a in 0..n {
        for b in a + 1..n {
            if !edges.contains(&(a, b)) && rng.gen_range(0..den) < num {
                edges.insert((a, b));
            }
        }
    }
    let vertices: Vec<(VertexId, Weight)> = (0..n)
        .map(|i| (numbered_id(i), p.weight_grid[rng.gen_range(0..p.weight_grid.len())].clone()))
        .collect();
    let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
    edges.sort_unstable();
    let edges = edges.into_iter().map(|(a, b)| (numbered_id(a), numbered_id(b)));
    Ok(WeightedGraph::new(vertices, edges).expect("generated graphs are simple"))
}

/// A class of `n` sequences of length `2ℓ+1` satisfying the class conditions
/// by construction: each half grows outward from the hub value with
/// non-negative, non-decreasing steps drawn from a half-integer grid.
pub fn random_convex_class(n: usize, ell: usize, seed: u64) -> ConvexSequenceClass {
    let mut rng = rng_for(seed);
    let half = |k: u32| BigRational::new(k.into(), 2u32.into());
    let hub = BigRational::from_integer(rng.gen_range(0u32..=3).into());
    let side = |rng: &mut ChaCha8Rng| -> Vec<BigRational> {
        let mut step = half(0);
        let mut value = hub.clone();
        (0..ell)
            .map(|_| {
                step += half(rng.gen_range(0..=3));
                value += &step;
                value.clone()
            })
            .collect()
    };
    let sequences = (0..n.max(1))
        .map(|_| {
            let mut left = side(&mut rng);
            left.reverse();
            let right = side(&mut rng);
            left.into_iter().chain(std::iter::once(hub.clone())).chain(right).collect()
        })
        .collect();
    ConvexSequenceClass::new(hub.clone(), sequences)
}

/// All permutations of `0..n`.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn pair_bit(a: usize, b: usize) -> u32 {
    let (a, b) = (a.min(b), a.max(b));
    1 << (b * (b - 1) / 2 + a)
}

fn canonical_mask(mask: u32, n: usize, perms: &[Vec<usize>]) -> u32 {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|b| (0..b).map(move |a| (a, b)))
        .filter(|&(a, b)| mask & pair_bit(a, b) != 0)
        .collect();
    perms
        .iter()
        .map(|p| pairs.iter().fold(0u32, |m, &(a, b)| m | pair_bit(p[a], p[b])))
        .min()
        .unwrap_or(0)
}

fn mask_connected(mask: u32, n: usize) -> bool {
    if n == 0 {
        return false;
    }
    let mut seen = 1u32;
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if w != v && mask & pair_bit(v, w) != 0 && seen & (1 << w) == 0 {
                seen |= 1 << w;
                stack.push(w);
            }
        }
    }
    seen.count_ones() as usize == n
}

/// One representative edge list per isomorphism class of connected graphs on
/// `n` vertices (`n <= 7`). Graphs on `n` vertices are grown from all classes
/// on `n-1` vertices by adding a vertex with every possible neighbourhood.
pub fn connected_graph_classes(n: usize) -> Vec<Vec<(usize, usize)>> {
    assert!((1..=7).contains(&n), "isomorphism sweep supports 1..=7 vertices");
    let mut classes: BTreeSet<u32> = BTreeSet::from([0]);
    for size in 2..=n {
        let perms = permutations(size);
        let mut next = BTreeSet::new();
        for &base in &classes {
            for nbhd in 0u32..(1 << (size - 1)) {
                let mask = (0..size - 1)
                    .filter(|&a| nbhd & (1 << a) != 0)
                    .fold(base, |m, a| m | pair_bit(a, size - 1));
                next.insert(canonical_mask(mask, size, &perms));
            }
        }
        classes = next;
    }
    classes
        .into_iter()
        .filter(|&m| mask_connected(m, n))
        .map(|m| {
            (0..n)
                .flat_map(|b| (0..b).map(move |a| (a, b)))
                .filter(|&(a, b)| m & pair_bit(a, b) != 0)
                .collect()
        })
        .collect()
}

/// Every connected labelled graph on `n` vertices (`n <= 6`), as edge lists.
pub fn connected_labelled_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    assert!((1..=6).contains(&n), "labelled sweep supports 1..=6 vertices");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|b| (0..b).map(move |a| (a, b))).collect();
    (0u32..(1 << pairs.len()))
        .filter_map(|bits| {
            let chosen: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| bits & (1 << i) != 0).map(|(_, &p)| p).collect();
            let mask = chosen.iter().fold(0, |m, &(a, b)| m | pair_bit(a, b));
            mask_connected(mask, n).then_some(chosen)
        })
        .collect()
}

/// Builds the graph on `v0..v{n-1}` with the given edges and weights.
pub fn graph_from_edges(weights: &[Weight], edges: &[(usize, usize)]) -> WeightedGraph {
    let vertices = weights.iter().enumerate().map(|(i, w)| (numbered_id(i), w.clone()));
    let edges = edges.iter().map(|&(a, b)| (numbered_id(a), numbered_id(b)));
    WeightedGraph::new(vertices, edges).expect("edge lists from the sweep are simple")
}

/// All weight vectors of length `n` over `grid`, in odometer order.
pub fn all_weightings(n: usize, grid: &[Weight]) -> Vec<Vec<Weight>> {
    (0..n).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|prefix| {
                grid.iter().map(move |w| {
                    let mut next = prefix.clone();
                    next.push(w.clone());
                    next
                })
            })
            .collect()
    })
}
