//! Shared fixtures for the criterion benches.

use ammd_core::synth::{asymmetric_norm_metric, random_metric, scale_free_metric, ScaleFree};
use ammd_core::DistanceMatrix;

/// Fixed-seed spaces of size `n`, named for bench ids.
pub fn spaces(n: usize) -> Vec<(&'static str, DistanceMatrix<u64>)> {
    vec![
        ("random-complete", random_metric(n, 1000, 7).expect("closure of a small complete digraph")),
        ("scale-free", scale_free_metric(n, ScaleFree::default(), 7).expect("strongly connected by construction")),
        ("asymmetric-norm", asymmetric_norm_metric(n, 2, 100, 3, 7)),
    ]
}
