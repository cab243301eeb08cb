use serde::{Deserialize, Serialize};

use crate::antichain::{max_antichain_with, AntichainBackend};
use crate::digraph::{
    find_chordless_cycle, find_short_path, is_independent, scc_condensation, weak_components,
    ThresholdDigraph,
};
use crate::distance::{Cutoff, Distance};
use crate::metric::{diversity, DistanceMatrix};

use super::select_farthest;

/// Which structure supplied a component's independent points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Cycle,
    Antichain,
    Path,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Extraction<T> {
    /// Sorted original ids, `k` of them.
    pub solution: Vec<usize>,
    pub score: T,
    /// Size of the union of per-component independent sets.
    pub independent: usize,
    /// Branch taken by each weak component, in component order.
    pub branches: Vec<Branch>,
}

/// Independent points of the threshold digraph over `vertices`, gathered per
/// weak component from a chordless cycle, a maximum antichain of the
/// condensation, or a short path in it. `None` when fewer than `k` are found.
/// Every pair of a returned solution is at distance at least `cutoff`.
pub fn extract<T: Distance>(
    d: &DistanceMatrix<T>,
    vertices: &[usize],
    cutoff: Cutoff<T>,
    k: usize,
    backend: AntichainBackend,
) -> Option<Extraction<T>> {
    if vertices.len() < k {
        return None;
    }
    let tg = ThresholdDigraph::build(d, vertices, cutoff);
    let mut independent: Vec<usize> = Vec::new();
    let mut branches = Vec::new();
    for comp in weak_components(&tg.graph) {
        if comp.len() == 1 {
            independent.push(comp[0]);
            branches.push(Branch::Antichain);
            continue;
        }
        let g = tg.graph.induced(&comp);
        let cycle = find_chordless_cycle(&g);
        let cond = scc_condensation(&g);
        let antichain: Vec<usize> = max_antichain_with(&cond.dag, backend)
            .expect("condensation is acyclic")
            .members
            .iter()
            .map(|&c| cond.representative(c))
            .collect();
        let path: Vec<usize> = find_short_path(&cond.dag, 2 * k - 1)
            .iter()
            .map(|&c| cond.representative(c))
            .collect();
        let (c, m, l) = (cycle.as_ref().map_or(0, Vec::len), antichain.len(), path.len());
        let (branch, local): (Branch, Vec<usize>) = match cycle {
            Some(cyc) if c + 1 >= 2 * m && c >= l => {
                // the last vertex of an odd cycle is adjacent to the first
                (Branch::Cycle, cyc.iter().copied().step_by(2).take(c / 2).collect())
            }
            _ if 2 * m > l => (Branch::Antichain, antichain),
            _ => (Branch::Path, path.iter().copied().step_by(2).collect()),
        };
        debug_assert!(is_independent(&g, &local));
        independent.extend(local.into_iter().map(|x| comp[x]));
        branches.push(branch);
    }
    if independent.len() < k {
        return None;
    }
    let originals: Vec<usize> = independent.iter().map(|&x| tg.vertices[x]).collect();
    let solution = select_farthest(d, &originals, k);
    let score = diversity(d, &solution).expect("k >= 2");
    debug_assert!(!cutoff.admits(score), "extracted set falls below the cutoff");
    Some(Extraction {
        solution,
        score,
        independent: independent.len(),
        branches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::tests::{arb_instance, star};
    use crate::metric::unique_distances;
    use proptest::prelude::*;

    #[test]
    fn star_at_sixth() {
        let d = star(6);
        let e = extract(&d, &[0, 1, 2, 3, 4], Cutoff::fraction(6, 6), 3, AntichainBackend::Flow).unwrap();
        assert_eq!(e.solution, vec![0, 1, 2]);
        assert_eq!(e.score, 6);
        assert_eq!(e.branches, vec![Branch::Antichain]);
        assert!(extract(&d, &[0, 1, 2, 3, 4], Cutoff::fraction(6, 6), 4, AntichainBackend::Flow).is_none());
    }

    #[test]
    fn edgeless_below_min_distance() {
        let d = DistanceMatrix::from_fn(6, |i, j| if i == j { 0u64 } else { 10 + (i * 7 + j) as u64 % 5 });
        let e = extract(&d, &[0, 1, 2, 3, 4, 5], Cutoff::exact(10), 4, AntichainBackend::Flow).unwrap();
        assert_eq!(e.independent, 6);
        assert!(e.score >= 10);
    }

    #[test]
    fn cycle_branch() {
        // directed ring of 6 at distance 1, everything else 20
        let n = 6;
        let d = DistanceMatrix::from_fn(n, |i, j| match (i, j) {
            _ if i == j => 0u64,
            _ if (i + 1) % n == j => 1,
            _ => 20,
        });
        let e = extract(&d, &(0..n).collect::<Vec<_>>(), Cutoff::exact(2), 3, AntichainBackend::Flow).unwrap();
        assert_eq!(e.branches, vec![Branch::Cycle]);
        assert_eq!(e.solution, vec![0, 2, 4]);
        assert_eq!(e.score, 20);
    }

    #[test]
    fn path_branch() {
        // 0 -> 1 -> 2 -> 3 -> 4 at distance 1, plus a shortcut-free layout
        let n = 5;
        let d = DistanceMatrix::from_fn(n, |i, j| match (i, j) {
            _ if i == j => 0u64,
            _ if i + 1 == j => 1,
            _ => 30,
        });
        let e = extract(&d, &(0..n).collect::<Vec<_>>(), Cutoff::exact(2), 3, AntichainBackend::Flow).unwrap();
        assert_eq!(e.branches, vec![Branch::Path]);
        assert_eq!(e.solution, vec![0, 2, 4]);
    }

    proptest! {
        #[test]
        fn solutions_clear_the_cutoff(d in arb_instance(2..=10, 30), k in 2usize..5, pick in any::<prop::sample::Index>(), q in 1u64..8) {
            let rs = unique_distances(&d);
            prop_assume!(!rs.is_empty());
            let r = rs[pick.index(rs.len())];
            let all: Vec<usize> = (0..d.n()).collect();
            for backend in [AntichainBackend::Flow, AntichainBackend::Matching] {
                if let Some(e) = extract(&d, &all, Cutoff::fraction(r, q), k, backend) {
                    prop_assert_eq!(e.solution.len(), k);
                    prop_assert!(e.score * q >= r);
                    prop_assert!(e.independent >= k);
                }
            }
        }
    }
}
