//! Cluster-then-extract solvers.
//!
//! For a radius `R` the space is clustered at `R` and independent points are
//! extracted from the threshold digraph over the centers at `R / 2k`. Radii
//! sharing a clustering form one group, and within a group extraction is
//! memoized on the arc set of the threshold digraph, so repeated work is
//! skipped without changing any outcome.

use std::collections::HashMap;

use crate::antichain::AntichainBackend;
use crate::distance::{Cutoff, Distance};
use crate::error::Result;
use crate::metric::{unique_distances, DistanceMatrix};

use super::cluster::Clusterer;
use super::{check_k, extract, Algorithm, Candidate, CenterRule, Extraction, Run, SolverResult, SolverStats};

/// One clustering with its extraction cache.
struct Group<T> {
    centers: Vec<usize>,
    /// Sorted distances between ordered pairs of distinct centers.
    pair_distances: Vec<T>,
    memo: HashMap<usize, Option<Extraction<T>>>,
}

impl<T: Distance> Group<T> {
    fn new(d: &DistanceMatrix<T>, mut centers: Vec<usize>) -> Self {
        centers.sort_unstable();
        let mut pair_distances: Vec<T> = centers
            .iter()
            .flat_map(|&u| centers.iter().filter(move |&&v| v != u).map(move |&v| d.get(u, v)))
            .collect();
        pair_distances.sort_unstable();
        Group {
            centers,
            pair_distances,
            memo: HashMap::new(),
        }
    }

    /// Number of arcs of the threshold digraph; equal counts mean equal digraphs.
    fn arc_count(&self, cutoff: &Cutoff<T>) -> usize {
        self.pair_distances.partition_point(|&x| cutoff.admits(x))
    }

    fn extract(
        &mut self,
        d: &DistanceMatrix<T>,
        cutoff: Cutoff<T>,
        k: usize,
        backend: AntichainBackend,
        stats: &mut SolverStats,
    ) -> Option<Extraction<T>> {
        let key = self.arc_count(&cutoff);
        let centers = &self.centers;
        self.memo
            .entry(key)
            .or_insert_with(|| {
                stats.extract_calls += 1;
                extract(d, centers, cutoff, k, backend)
            })
            .clone()
    }
}

struct Search<'a, T> {
    d: &'a DistanceMatrix<T>,
    k: usize,
    backend: AntichainBackend,
    radii: Vec<T>,
    clusterer: Clusterer<'a, T>,
    run: Run,
    best: Option<Candidate<T>>,
}

impl<'a, T: Distance> Search<'a, T> {
    fn new(d: &'a DistanceMatrix<T>, k: usize, rule: CenterRule, backend: AntichainBackend, alg: Algorithm) -> Self {
        Search {
            d,
            k,
            backend,
            radii: unique_distances(d),
            clusterer: Clusterer::new(d, rule),
            run: Run::start(alg, k),
            best: None,
        }
    }

    /// Clusters at `radii[i]`; returns the group and one past the last index
    /// of the radii sharing it.
    fn cluster(&mut self, i: usize) -> (Group<T>, usize) {
        self.run.stats.cluster_calls += 1;
        let (outcome, hi) = self.clusterer.run(self.radii[i]);
        let end = i + self.radii[i..].partition_point(|&r| hi.is_none_or(|h| r <= h));
        (Group::new(self.d, outcome.centers), end.max(i + 1))
    }

    fn base_cutoff(&self, i: usize) -> Cutoff<T> {
        Cutoff::fraction(self.radii[i], 2 * self.k as u64)
    }

    fn try_extract(&mut self, group: &mut Group<T>, i: usize, cutoff: Cutoff<T>) -> bool {
        if group.centers.len() < self.k {
            return false;
        }
        match group.extract(self.d, cutoff, self.k, self.backend, &mut self.run.stats) {
            Some(e) => {
                let c = Candidate {
                    solution: e.solution,
                    score: e.score,
                    radius: Some(self.radii[i]),
                    cutoff: Some(cutoff),
                };
                Candidate::offer(&mut self.best, c);
                true
            }
            None => false,
        }
    }

    /// Binary search for the largest distance cutoff in `(radii[i] / 2k, radii[i]]`
    /// that still extracts.
    fn refine(&mut self, group: &mut Group<T>, i: usize) {
        let base = self.base_cutoff(i);
        let mut a = self.radii[..=i]
            .partition_point(|&r| Cutoff::exact(r).cmp_value(&base) != std::cmp::Ordering::Greater);
        let mut b = i + 1; // exclusive
        while a < b {
            let t = (a + b - 1) / 2;
            if self.try_extract(group, i, Cutoff::exact(self.radii[t])) {
                a = t + 1;
            } else {
                b = t;
            }
        }
    }

    fn finish(self) -> SolverResult<T> {
        self.run.finish(self.d, self.best, None)
    }
}

/// Every radius, each extracted at `R / 2k`.
pub fn bac<T: Distance>(d: &DistanceMatrix<T>, k: usize, rule: CenterRule, backend: AntichainBackend) -> Result<SolverResult<T>> {
    check_k(d.n(), k)?;
    let mut s = Search::new(d, k, rule, backend, Algorithm::Bac);
    let mut i = 0;
    while i < s.radii.len() {
        let (mut group, end) = s.cluster(i);
        s.run.stats.radius_groups += 1;
        if group.centers.len() >= k {
            for t in i..end {
                let cutoff = s.base_cutoff(t);
                s.try_extract(&mut group, t, cutoff);
            }
        }
        i = end;
    }
    Ok(s.finish())
}

/// As [`bac`], and every radius that extracts also searches for a larger cutoff.
pub fn bacr<T: Distance>(d: &DistanceMatrix<T>, k: usize, rule: CenterRule, backend: AntichainBackend) -> Result<SolverResult<T>> {
    check_k(d.n(), k)?;
    let mut s = Search::new(d, k, rule, backend, Algorithm::Bacr);
    let mut i = 0;
    while i < s.radii.len() {
        let (mut group, end) = s.cluster(i);
        s.run.stats.radius_groups += 1;
        if group.centers.len() >= k {
            for t in i..end {
                let cutoff = s.base_cutoff(t);
                if s.try_extract(&mut group, t, cutoff) {
                    s.refine(&mut group, t);
                }
            }
        }
        i = end;
    }
    Ok(s.finish())
}

/// Binary search over radii for one that extracts at `R / 2k` while the next
/// probed radius does not, then a cutoff search at that radius.
pub fn bacf<T: Distance>(d: &DistanceMatrix<T>, k: usize, rule: CenterRule, backend: AntichainBackend) -> Result<SolverResult<T>> {
    check_k(d.n(), k)?;
    let mut s = Search::new(d, k, rule, backend, Algorithm::Bacf);
    let (mut a, mut b) = (0, s.radii.len());
    let mut last: Option<(Group<T>, usize)> = None;
    while a < b {
        let t = (a + b - 1) / 2;
        let (mut group, _) = s.cluster(t);
        s.run.stats.radius_groups += 1;
        let cutoff = s.base_cutoff(t);
        if s.try_extract(&mut group, t, cutoff) {
            last = Some((group, t));
            a = t + 1;
        } else {
            b = t;
        }
    }
    if let Some((mut group, i)) = last {
        s.refine(&mut group, i);
    }
    Ok(s.finish())
}
