//! Shannon and Rényi entropies of graphs, and checkable information
//! inequalities between them.
//!
//! Distributions come either from the vertex orbits of the automorphism group
//! ([`orbits::vertex_orbits`]) or from a positive vertex functional built on
//! j-spheres ([`measures::linear_functional_values`],
//! [`measures::exponential_functional_values`]). The [`inequalities`] module
//! evaluates bounds between these entropies and returns a [`BoundReport`] per
//! instance; [`harness`] sweeps them over seeded graph corpora.
//!
//! The math is generic over [`Scalar`] (`f32` or `f64`). The aliases below fix
//! the scalar to `f64`, which is what the harness and CLI use.

pub mod error;
pub mod graph;
pub mod harness;
pub mod inequalities;
pub mod measures;
pub mod orbits;
pub mod scalar;

pub use error::{Error, Result};
pub use graph::{Graph, GraphClass};
pub use inequalities::{BoundReport, Direction, LogBase, TheoremId, Variant};
pub use measures::{Distribution, FunctionalKind, FunctionalSpec, FunctionalValues};
pub use orbits::OrbitPartition;
pub use scalar::Scalar;

pub type Distribution64 = Distribution<f64>;
pub type Distribution32 = Distribution<f32>;
pub type FunctionalSpec64 = FunctionalSpec<f64>;
pub type FunctionalValues64 = FunctionalValues<f64>;
pub type BoundReport64 = BoundReport<f64>;
pub type BoundReport32 = BoundReport<f32>;
