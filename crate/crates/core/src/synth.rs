//! Seeded instance generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::Result;
use crate::metric::{close_matrix, metric_closure, DistanceMatrix, WeightedDigraph};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complete digraph with independent weights in `1..max_weight`, not closed.
pub fn random_complete(n: usize, max_weight: u64, seed: u64) -> DistanceMatrix<u64> {
    assert!(max_weight >= 2, "weights are drawn from 1..max_weight");
    let mut r = rng(seed);
    DistanceMatrix::from_fn(n, |i, j| if i == j { 0 } else { r.gen_range(1..max_weight) })
}

/// Metric closure of [`random_complete`].
pub fn random_metric(n: usize, max_weight: u64, seed: u64) -> Result<DistanceMatrix<u64>> {
    close_matrix(&random_complete(n, max_weight, seed))
}

/// Complete digraph with weights in `base..2 * base`. Any such weights obey
/// the triangle inequality, so this is a metric with up to `base` distinct
/// distances and no closure is needed.
pub fn banded_metric(n: usize, base: u64, seed: u64) -> DistanceMatrix<u64> {
    assert!(base >= 1);
    let mut r = rng(seed);
    DistanceMatrix::from_fn(n, |i, j| if i == j { 0 } else { r.gen_range(base..2 * base) })
}

/// Points with integer coordinates in `0..range` under the asymmetric norm
/// that charges 1 per unit moved up a coordinate and `back` per unit moved
/// down. Asymmetric norms are subadditive, so the triangle inequality holds.
pub fn asymmetric_norm_metric(n: usize, dim: usize, range: u64, back: u64, seed: u64) -> DistanceMatrix<u64> {
    assert!(range >= 1);
    let mut r = rng(seed);
    let pts: Vec<Vec<u64>> = (0..n).map(|_| (0..dim).map(|_| r.gen_range(0..range)).collect()).collect();
    DistanceMatrix::from_fn(n, |i, j| {
        pts[i]
            .iter()
            .zip(&pts[j])
            .map(|(&a, &b)| if b >= a { b - a } else { back * (a - b) })
            .sum()
    })
}

/// Metric whose two directions differ by at most a factor `1 + eps`: a
/// symmetric metric `s`, each ordered pair raised to
/// `s + floor(eps * s * u)` with `u` uniform in `[0, 1)`, then closed.
/// Closing keeps the ratio bound because no path is shorter than `s`.
pub fn epsilon_symmetric(n: usize, max_weight: u64, eps: f64, seed: u64) -> Result<DistanceMatrix<u64>> {
    assert!(eps >= 0.0);
    let mut r = rng(seed);
    let mut w = vec![0u64; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let x = r.gen_range(1..max_weight);
            w[i * n + j] = x;
            w[j * n + i] = x;
        }
    }
    let s = close_matrix(&DistanceMatrix::from_flat(n, w)?)?;
    let raised = DistanceMatrix::from_fn(n, |i, j| {
        let base = s.get(i, j);
        base + (eps * base as f64 * r.gen::<f64>()).floor() as u64
    });
    close_matrix(&raised)
}

/// Attachment probabilities of the directed preferential-attachment model.
/// Each step adds, with probability `alpha`, a new vertex with an arc to an
/// existing one; with `beta` an arc between existing vertices; with `gamma`
/// a new vertex with an arc from an existing one. Endpoints are drawn in
/// proportion to in-degree plus `delta_in`, or out-degree plus `delta_out`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScaleFree {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta_in: f64,
    pub delta_out: f64,
}

impl Default for ScaleFree {
    fn default() -> Self {
        ScaleFree {
            alpha: 0.41,
            beta: 0.54,
            gamma: 0.05,
            delta_in: 0.2,
            delta_out: 0.0,
        }
    }
}

/// Unit-weight scale-free digraph on `n` vertices, grown from a 3-cycle,
/// with every arc also reversed so the result is strongly connected.
pub fn scale_free_digraph(n: usize, p: ScaleFree, seed: u64) -> WeightedDigraph<u64> {
    let total = p.alpha + p.beta + p.gamma;
    assert!(total > 0.0 && p.delta_in >= 0.0 && p.delta_out >= 0.0);
    let mut r = rng(seed);
    let mut arcs: Vec<(usize, usize)> = vec![(0, 1), (1, 2), (2, 0)];
    let mut count = 3.min(n.max(1));
    if n < 3 {
        arcs.retain(|&(u, v)| u < n && v < n);
    }
    // draws a vertex in proportion to (in- or out-) degree plus delta
    let pick = |r: &mut ChaCha8Rng, arcs: &[(usize, usize)], count: usize, delta: f64, head: bool| -> usize {
        let x = r.gen::<f64>() * (arcs.len() as f64 + delta * count as f64);
        if x < delta * count as f64 || arcs.is_empty() {
            r.gen_range(0..count)
        } else {
            let a = arcs[r.gen_range(0..arcs.len())];
            if head {
                a.1
            } else {
                a.0
            }
        }
    };
    while count < n {
        let x = r.gen::<f64>() * total;
        if x < p.alpha {
            let w = pick(&mut r, &arcs, count, p.delta_in, true);
            arcs.push((count, w));
            count += 1;
        } else if x < p.alpha + p.beta {
            let v = pick(&mut r, &arcs, count, p.delta_out, false);
            let w = pick(&mut r, &arcs, count, p.delta_in, true);
            arcs.push((v, w));
        } else {
            let v = pick(&mut r, &arcs, count, p.delta_out, false);
            arcs.push((v, count));
            count += 1;
        }
    }
    let g = Digraph::from_arcs(n, arcs.iter().flat_map(|&(u, v)| [(u, v), (v, u)]));
    let mut w = WeightedDigraph::new(n);
    for (u, v) in g.arcs() {
        w.add_arc(u, v, 1);
    }
    w
}

pub fn scale_free_metric(n: usize, p: ScaleFree, seed: u64) -> Result<DistanceMatrix<u64>> {
    metric_closure(&scale_free_digraph(n, p, seed))
}

/// DAG with each forward pair of a random vertex order present with probability `p`.
pub fn random_dag(n: usize, p: f64, seed: u64) -> Digraph {
    let mut r = rng(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut r);
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if r.gen_bool(p) {
                arcs.push((perm[i], perm[j]));
            }
        }
    }
    Digraph::from_arcs(n, arcs)
}
