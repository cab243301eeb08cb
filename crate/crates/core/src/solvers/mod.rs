//! Max-min diversification solvers.
//!
//! Every solver returns a [`SolverResult`] whose `score` is the diversity of
//! its `solution`. Ties anywhere resolve to the smallest vertex id.

mod bac;
mod cluster;
mod exact;
mod extract;
mod greedy;
mod naive;

pub use bac::{bac, bacf, bacr};
pub use cluster::{cluster_maxball, CenterRule, ClusterOutcome};
pub use exact::{exact, k_clique, CliqueGraph, Timeout};
pub use extract::{extract, Branch, Extraction};
pub use greedy::{greedy_dmin, random_baseline, StartRule};
pub use naive::{naive_ma, NaiveMode};

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::antichain::AntichainBackend;
use crate::distance::{Cutoff, Distance};
use crate::error::{Error, Result};
use crate::metric::{diversity, max_d_min_pair_within, DistanceMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Greedy,
    Random,
    NaiveMa,
    Bac,
    Bacr,
    Bacf,
    Exact,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::Greedy,
        Algorithm::Random,
        Algorithm::NaiveMa,
        Algorithm::Bac,
        Algorithm::Bacr,
        Algorithm::Bacf,
        Algorithm::Exact,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::Random => "random",
            Algorithm::NaiveMa => "naive-ma",
            Algorithm::Bac => "bac",
            Algorithm::Bacr => "bacr",
            Algorithm::Bacf => "bacf",
            Algorithm::Exact => "exact",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == key || (key == "naive" && *a == Algorithm::NaiveMa))
            .ok_or_else(|| Error::parse("algorithm", format!("unknown algorithm `{s}`")))
    }
}

/// Work counters, for comparing search strategies independent of wall time.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverStats {
    /// Extraction runs actually performed (memoized repeats excluded).
    pub extract_calls: usize,
    pub cluster_calls: usize,
    /// Radius groups sharing one clustering.
    pub radius_groups: usize,
    pub antichain_calls: usize,
    pub clique_searches: usize,
}

/// Outcome of a possibly interrupted exact search.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactBounds<T> {
    /// Largest radius with a verified k-clique.
    pub lower: T,
    /// Smallest radius proven to have no k-clique.
    pub refuted: Option<T>,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverResult<T> {
    pub algorithm: Algorithm,
    pub k: usize,
    /// Sorted vertex ids.
    pub solution: Vec<usize>,
    pub score: T,
    /// Clustering or search radius that produced the solution.
    pub radius: Option<T>,
    /// Threshold of the digraph the solution was extracted from.
    pub cutoff: Option<Cutoff<T>>,
    pub elapsed: Duration,
    pub feasible: bool,
    pub stats: SolverStats,
    pub bounds: Option<ExactBounds<T>>,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub seed: u64,
    pub reps: usize,
    pub start: StartRule,
    pub center_rule: CenterRule,
    pub naive_mode: NaiveMode,
    pub backend: AntichainBackend,
    pub time_budget: Option<Duration>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            seed: 0,
            reps: 10,
            start: StartRule::MaxEdge,
            center_rule: CenterRule::FarthestFirst,
            naive_mode: NaiveMode::Scan,
            backend: AntichainBackend::Flow,
            time_budget: None,
        }
    }
}

pub fn solve<T: Distance>(
    d: &DistanceMatrix<T>,
    k: usize,
    algorithm: Algorithm,
    opts: &SolveOptions,
) -> Result<SolverResult<T>> {
    match algorithm {
        Algorithm::Greedy => greedy_dmin(d, k, opts.start),
        Algorithm::Random => random_baseline(d, k, opts.reps, opts.seed),
        Algorithm::NaiveMa => naive_ma(d, k, opts.naive_mode, opts.backend),
        Algorithm::Bac => bac(d, k, opts.center_rule, opts.backend),
        Algorithm::Bacr => bacr(d, k, opts.center_rule, opts.backend),
        Algorithm::Bacf => bacf(d, k, opts.center_rule, opts.backend),
        Algorithm::Exact => exact(d, k, opts.time_budget),
    }
}

pub(crate) fn check_k(n: usize, k: usize) -> Result<()> {
    if k < 2 || k > n {
        return Err(Error::InvalidK { k, n });
    }
    Ok(())
}

/// A scored solution under construction.
#[derive(Clone, Debug)]
pub(crate) struct Candidate<T> {
    pub solution: Vec<usize>,
    pub score: T,
    pub radius: Option<T>,
    pub cutoff: Option<Cutoff<T>>,
}

impl<T: Distance> Candidate<T> {
    /// Higher score wins, then smaller radius, then the lexicographically
    /// smaller solution.
    pub fn beats(&self, other: &Candidate<T>) -> bool {
        use std::cmp::Ordering::*;
        match self.score.cmp(&other.score) {
            Greater => true,
            Less => false,
            Equal => match (self.radius, other.radius) {
                (Some(a), Some(b)) if a != b => a < b,
                _ => self.solution < other.solution,
            },
        }
    }

    pub fn offer(best: &mut Option<Candidate<T>>, c: Candidate<T>) {
        if best.as_ref().is_none_or(|b| c.beats(b)) {
            *best = Some(c);
        }
    }
}

pub(crate) struct Run {
    algorithm: Algorithm,
    k: usize,
    started: Instant,
    pub stats: SolverStats,
}

impl Run {
    pub fn start(algorithm: Algorithm, k: usize) -> Self {
        Run {
            algorithm,
            k,
            started: Instant::now(),
            stats: SolverStats::default(),
        }
    }

    /// Packages the best candidate, or the first `k` vertices when there is none.
    pub fn finish<T: Distance>(
        self,
        d: &DistanceMatrix<T>,
        best: Option<Candidate<T>>,
        bounds: Option<ExactBounds<T>>,
    ) -> SolverResult<T> {
        let best = best.unwrap_or_else(|| {
            let solution: Vec<usize> = (0..self.k).collect();
            Candidate {
                score: diversity(d, &solution).expect("k >= 2 vertices"),
                solution,
                radius: None,
                cutoff: None,
            }
        });
        debug_assert_eq!(best.solution.len(), self.k);
        debug_assert_eq!(diversity(d, &best.solution).ok(), Some(best.score));
        SolverResult {
            algorithm: self.algorithm,
            k: self.k,
            solution: best.solution,
            score: best.score,
            radius: best.radius,
            cutoff: best.cutoff,
            elapsed: self.started.elapsed(),
            feasible: true,
            stats: self.stats,
            bounds,
        }
    }
}

/// Grows `chosen` to `k` vertices from `pool`, each time adding the vertex
/// with the largest `d_min` to the chosen set. Returns sorted ids.
pub(crate) fn grow_farthest<T: Distance>(
    d: &DistanceMatrix<T>,
    pool: &[usize],
    mut chosen: Vec<usize>,
    k: usize,
) -> Vec<usize> {
    let mut pool = pool.to_vec();
    pool.sort_unstable();
    pool.dedup();
    let mut taken: Vec<bool> = pool.iter().map(|v| chosen.contains(v)).collect();
    let mut near: Vec<Option<T>> = pool
        .iter()
        .map(|&v| chosen.iter().map(|&c| d.d_min(v, c)).min())
        .collect();
    while chosen.len() < k {
        let mut pick: Option<usize> = None;
        for (i, _) in pool.iter().enumerate() {
            if taken[i] {
                continue;
            }
            if pick.is_none_or(|p| near[i] > near[p]) {
                pick = Some(i);
            }
        }
        let Some(i) = pick else { break };
        taken[i] = true;
        let v = pool[i];
        chosen.push(v);
        for (j, &w) in pool.iter().enumerate() {
            let x = d.d_min(v, w);
            near[j] = Some(near[j].map_or(x, |m| m.min(x)));
        }
    }
    chosen.sort_unstable();
    chosen
}

/// `k` points of `pool` by farthest-first selection seeded with the pool's
/// maximum-`d_min` pair.
pub(crate) fn select_farthest<T: Distance>(
    d: &DistanceMatrix<T>,
    pool: &[usize],
    k: usize,
) -> Vec<usize> {
    let seed = max_d_min_pair_within(d, pool).map_or_else(Vec::new, |(u, v)| vec![u, v]);
    grow_farthest(d, pool, seed, k)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::metric::{close_matrix, DistanceMatrix};
    use proptest::prelude::*;

    /// Star-shaped instance: `u1..u3` at 0 towards `v1, v2`, everything else `r`.
    pub(crate) fn star(r: u64) -> DistanceMatrix<u64> {
        DistanceMatrix::from_fn(5, |i, j| if i == j || (i < 3 && j >= 3) { 0 } else { r })
    }

    /// Metric closure of a random complete digraph with weights in `1..max_w`.
    pub(crate) fn arb_instance(
        n: std::ops::RangeInclusive<usize>,
        max_w: u64,
    ) -> impl Strategy<Value = DistanceMatrix<u64>> {
        n.prop_flat_map(move |n| {
            proptest::collection::vec(1..max_w, n * n).prop_map(move |w| {
                let raw = DistanceMatrix::from_flat(n, w).unwrap();
                close_matrix(&raw).unwrap()
            })
        })
    }

    pub(crate) fn brute_optimum(d: &DistanceMatrix<u64>, k: usize) -> u64 {
        fn go(d: &DistanceMatrix<u64>, k: usize, start: usize, set: &mut Vec<usize>, best: &mut u64) {
            if set.len() == k {
                *best = (*best).max(diversity(d, set).unwrap());
                return;
            }
            for v in start..d.n() {
                set.push(v);
                go(d, k, v + 1, set, best);
                set.pop();
            }
        }
        let mut best = 0;
        go(d, k, 0, &mut Vec::new(), &mut best);
        best
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert_eq!("NAIVE_MA".parse::<Algorithm>().unwrap(), Algorithm::NaiveMa);
        assert!("bogus".parse::<Algorithm>().is_err());
    }

    #[test]
    fn star_instance_all_solvers() {
        let d = star(6);
        let opts = SolveOptions::default();
        for a in [Algorithm::Exact, Algorithm::Bac, Algorithm::Bacr, Algorithm::Bacf, Algorithm::NaiveMa] {
            let r = solve(&d, 3, a, &opts).unwrap();
            assert_eq!(r.score, 6, "{a}");
            assert_eq!(r.solution, vec![0, 1, 2], "{a}");
        }
        let r = solve(&d, 3, Algorithm::Greedy, &SolveOptions { start: StartRule::Fixed(3), ..opts }).unwrap();
        assert_eq!(r.score, 0);
    }

    #[test]
    fn all_zero_space_returns_prefix() {
        let d = DistanceMatrix::from_fn(4, |_, _| 0u64);
        for a in Algorithm::ALL {
            let r = solve(&d, 3, a, &SolveOptions::default()).unwrap();
            assert_eq!(r.score, 0, "{a}");
            assert!(r.feasible);
            if a != Algorithm::Random {
                assert_eq!(r.solution, vec![0, 1, 2], "{a}");
            }
        }
    }

    #[test]
    fn k_range_checked() {
        let d = star(6);
        for a in Algorithm::ALL {
            for k in [0, 1, 6] {
                assert!(matches!(
                    solve(&d, k, a, &SolveOptions::default()),
                    Err(Error::InvalidK { .. })
                ));
            }
        }
    }

    #[test]
    fn uniform_space_scores_constant() {
        let d = DistanceMatrix::from_fn(7, |i, j| if i == j { 0u64 } else { 5 });
        for a in Algorithm::ALL {
            for k in 2..=7 {
                assert_eq!(solve(&d, k, a, &SolveOptions::default()).unwrap().score, 5);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn results_are_consistent(d in arb_instance(2..=10, 30), k in 2usize..5, alg in 0usize..7) {
            let k = k.min(d.n());
            let alg = Algorithm::ALL[alg];
            let r = solve(&d, k, alg, &SolveOptions::default()).unwrap();
            prop_assert_eq!(r.solution.len(), k);
            prop_assert!(r.solution.windows(2).all(|w| w[0] < w[1]));
            prop_assert_eq!(diversity(&d, &r.solution).unwrap(), r.score);
            prop_assert!(r.feasible);
            let again = solve(&d, k, alg, &SolveOptions::default()).unwrap();
            prop_assert_eq!(again.solution, r.solution);
        }

        #[test]
        fn guarantees_hold(d in arb_instance(2..=9, 40), k in 2usize..5) {
            let k = k.min(d.n());
            let opt = brute_optimum(&d, k);
            let o = SolveOptions::default();
            let e = solve(&d, k, Algorithm::Exact, &o).unwrap();
            prop_assert_eq!(e.score, opt);
            for a in [Algorithm::Bac, Algorithm::Bacr, Algorithm::Bacf] {
                let s = solve(&d, k, a, &o).unwrap().score;
                prop_assert!(s * 6 * k as u64 >= opt, "{} scored {} vs optimum {}", a, s, opt);
            }
            let s = solve(&d, k, Algorithm::NaiveMa, &o).unwrap().score;
            prop_assert!(s * (d.n() - k + 1) as u64 >= opt);
            let bac = solve(&d, k, Algorithm::Bac, &o).unwrap().score;
            let bacr = solve(&d, k, Algorithm::Bacr, &o).unwrap().score;
            prop_assert!(bacr >= bac);
        }
    }
}
