use serde::{Deserialize, Serialize};

use crate::distance::Distance;
use crate::metric::DistanceMatrix;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CenterRule {
    /// Start at an endpoint of a maximum-`d_min` pair, then take the unmarked
    /// point farthest (by `d_min`) from the chosen centers.
    #[default]
    FarthestFirst,
    /// Smallest unmarked id.
    FirstUnmarked,
}

/// Disjoint balls under `d_max`; centers are pairwise at `d_max >= R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterOutcome {
    /// Centers in selection order.
    pub centers: Vec<usize>,
    /// Cluster index of every vertex.
    pub assignment: Vec<usize>,
}

pub fn cluster_maxball<T: Distance>(d: &DistanceMatrix<T>, radius: T, rule: CenterRule) -> ClusterOutcome {
    Clusterer::new(d, rule).run(radius).0
}

/// Reuses the radius-independent first center across many runs.
pub(crate) struct Clusterer<'a, T> {
    d: &'a DistanceMatrix<T>,
    rule: CenterRule,
    first: usize,
}

impl<'a, T: Distance> Clusterer<'a, T> {
    pub fn new(d: &'a DistanceMatrix<T>, rule: CenterRule) -> Self {
        let first = match rule {
            CenterRule::FarthestFirst => d.max_d_min_pair().map_or(0, |(u, _)| u),
            CenterRule::FirstUnmarked => 0,
        };
        Clusterer { d, rule, first }
    }

    /// Clusters at `radius`. Also returns the smallest `d_max` that was
    /// compared and found `>= radius`: every radius in the half-open span
    /// from the largest compared value below `radius` up to that bound
    /// yields the same outcome. `None` means no upper bound.
    pub fn run(&self, radius: T) -> (ClusterOutcome, Option<T>) {
        assert!(radius > T::ZERO, "clustering radius must be positive");
        let d = self.d;
        let n = d.n();
        let mut assignment = vec![usize::MAX; n];
        let mut centers = Vec::new();
        let mut near: Vec<Option<T>> = vec![None; n];
        let mut hi: Option<T> = None;
        let mut next = if n > 0 { Some(self.first) } else { None };
        while let Some(c) = next {
            let t = centers.len();
            centers.push(c);
            for (v, slot) in assignment.iter_mut().enumerate() {
                if *slot != usize::MAX {
                    continue;
                }
                let dm = d.d_max(c, v);
                if dm < radius {
                    *slot = t;
                } else if hi.is_none_or(|h| dm < h) {
                    hi = Some(dm);
                }
            }
            next = match self.rule {
                CenterRule::FirstUnmarked => (0..n).find(|&v| assignment[v] == usize::MAX),
                CenterRule::FarthestFirst => {
                    let mut pick: Option<usize> = None;
                    for v in 0..n {
                        let x = d.d_min(c, v);
                        near[v] = Some(near[v].map_or(x, |m| m.min(x)));
                        if assignment[v] == usize::MAX && pick.is_none_or(|p| near[v] > near[p]) {
                            pick = Some(v);
                        }
                    }
                    pick
                }
            };
        }
        (ClusterOutcome { centers, assignment }, hi)
    }
}
