//! Approximation algorithms for max-min diversity over asymmetric distances.
//!
//! A space is a [`DistanceMatrix`] whose diversity measure is the smallest
//! `min(d(u, v), d(v, u))` over a chosen set. Solvers live in [`solvers`] and
//! are driven through [`solve`].

pub mod antichain;
pub mod digraph;
pub mod distance;
pub mod error;
pub mod io;
pub mod metric;
pub mod solvers;
pub mod synth;

pub use antichain::AntichainBackend;
pub use digraph::Digraph;
pub use distance::{Cutoff, Distance, DistanceValue, Real};
pub use error::{Error, Result};
pub use metric::{diversity, metric_closure, DistanceMatrix, WeightedDigraph};
pub use solvers::{solve, Algorithm, CenterRule, ExactBounds, SolveOptions, SolverResult, SolverStats, StartRule};
