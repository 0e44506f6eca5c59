//! Weighted star-convex graphs.
//!
//! A simple connected vertex-weighted graph is *star-convex* when some vertex
//! reaches every leaf along a weight-monotone path; the set of all such
//! vertices is the *core*. This crate decides star-convexity, computes cores,
//! extracts star-convex witness trees, combines graphs by union and
//! intersection, and embeds classes of convex sequences into regular spiders.
//! Every fast routine has a brute-force counterpart in [`oracle`].

pub mod convexity;
pub mod fixtures;
pub mod fuzz;
pub mod graph;
pub mod io;
pub mod ops;
pub mod oracle;
pub mod paths;
pub mod sequence;
pub mod weight;
pub mod witness;

pub use convexity::{core, is_star_convex, CoreError, CoreReport};
pub use graph::{GraphError, LeafSet, ValidationReport, VertexId, WeightedGraph};
pub use paths::{Direction, DirectionSet, MonotonePath};
pub use weight::Weight;
pub use witness::{extract_witness_tree, verify_witness, WitnessTree};
