use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::antichain::{max_antichain_any, AntichainBackend};
use crate::digraph::ThresholdDigraph;
use crate::distance::{Cutoff, Distance};
use crate::error::Result;
use crate::metric::{diversity, unique_distances, DistanceMatrix};

use super::{check_k, Algorithm, Candidate, Run, SolverResult};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NaiveMode {
    /// Every radius; best score wins.
    #[default]
    Scan,
    /// Largest radius whose threshold digraph still has a `k`-antichain.
    Binary,
}

/// Antichains of the threshold digraph at `R / (n - k + 1)`.
pub fn naive_ma<T: Distance>(
    d: &DistanceMatrix<T>,
    k: usize,
    mode: NaiveMode,
    backend: AntichainBackend,
) -> Result<SolverResult<T>> {
    check_k(d.n(), k)?;
    let mut run = Run::start(Algorithm::NaiveMa, k);
    let n = d.n();
    let divisor = (n - k + 1) as u64;
    let radii = unique_distances(d);
    let all: Vec<usize> = (0..n).collect();
    let mut pairs: Vec<T> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| d.get(i, j)))
        .collect();
    pairs.sort_unstable();

    // antichain prefix per arc count, since equal counts mean equal digraphs
    let mut memo: HashMap<usize, Option<Vec<usize>>> = HashMap::new();
    let mut probe = |i: usize, stats: &mut super::SolverStats| -> Option<Candidate<T>> {
        let cutoff = Cutoff::fraction(radii[i], divisor);
        let key = pairs.partition_point(|&x| cutoff.admits(x));
        let chosen = memo
            .entry(key)
            .or_insert_with(|| {
                stats.antichain_calls += 1;
                let g = ThresholdDigraph::build(d, &all, cutoff);
                let m = max_antichain_any(&g.graph, backend);
                (m.len() >= k).then(|| m[..k].to_vec())
            })
            .clone()?;
        Some(Candidate {
            score: diversity(d, &chosen).expect("k >= 2"),
            solution: chosen,
            radius: Some(radii[i]),
            cutoff: Some(cutoff),
        })
    };

    let mut best: Option<Candidate<T>> = None;
    match mode {
        NaiveMode::Scan => {
            for i in 0..radii.len() {
                if let Some(c) = probe(i, &mut run.stats) {
                    Candidate::offer(&mut best, c);
                }
            }
        }
        NaiveMode::Binary => {
            // the digraph only gains arcs as the radius grows
            let (mut a, mut b) = (0, radii.len());
            while a < b {
                let t = (a + b - 1) / 2;
                match probe(t, &mut run.stats) {
                    Some(c) => {
                        best = Some(c);
                        a = t + 1;
                    }
                    None => b = t,
                }
            }
        }
    }
    Ok(run.finish(d, best, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::tests::{arb_instance, brute_optimum, star};
    use proptest::prelude::*;

    #[test]
    fn star_instance() {
        for mode in [NaiveMode::Scan, NaiveMode::Binary] {
            let r = naive_ma(&star(6), 3, mode, AntichainBackend::Flow).unwrap();
            assert_eq!(r.solution, vec![0, 1, 2]);
            assert_eq!(r.score, 6);
        }
    }

    proptest! {
        #[test]
        fn binary_within_guarantee(d in arb_instance(2..=9, 30), k in 2usize..5) {
            let k = k.min(d.n());
            let opt = brute_optimum(&d, k);
            let floor = |s: u64| s * (d.n() - k + 1) as u64 >= opt;
            let scan = naive_ma(&d, k, NaiveMode::Scan, AntichainBackend::Flow).unwrap();
            let bin = naive_ma(&d, k, NaiveMode::Binary, AntichainBackend::Flow).unwrap();
            let other = naive_ma(&d, k, NaiveMode::Binary, AntichainBackend::Matching).unwrap();
            prop_assert!(floor(scan.score));
            prop_assert!(floor(bin.score));
            prop_assert!(floor(other.score));
            prop_assert!(scan.score >= bin.score);
        }
    }
}
