use std::time::{Duration, Instant};

use crate::distance::Distance;
use crate::error::Result;
use crate::metric::{unique_distances, DistanceMatrix};

use super::{check_k, grow_farthest, Algorithm, Candidate, ExactBounds, Run, SolverResult};

/// The search ran past its deadline.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Timeout;

/// Undirected graph as adjacency bitsets.
#[derive(Clone, Debug)]
pub struct CliqueGraph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl CliqueGraph {
    pub fn from_fn(n: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut adj = vec![0u64; n * words];
        for i in 0..n {
            for j in i + 1..n {
                if edge(i, j) {
                    adj[i * words + j / 64] |= 1 << (j % 64);
                    adj[j * words + i / 64] |= 1 << (i % 64);
                }
            }
        }
        CliqueGraph { n, words, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.row(u)[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Some `k`-clique, sorted, or `None` if there is none. Branch and bound
/// over a degeneracy order with greedy-coloring bounds, after peeling
/// vertices of degree below `k - 1`.
pub fn k_clique(g: &CliqueGraph, k: usize, deadline: Option<Instant>) -> Result<Option<Vec<usize>>, Timeout> {
    let n = g.n();
    if k <= 1 {
        return Ok((k == 0 || n > 0).then(|| (0..k.min(n)).collect()));
    }
    let order = peel_order(g, k);
    if order.len() < k {
        return Ok(None);
    }
    // relabel so bit positions follow the degeneracy order
    let m = order.len();
    let sub = CliqueGraph::from_fn(m, |a, b| g.has_edge(order[a], order[b]));
    let mut search = CliqueSearch {
        g: &sub,
        k,
        deadline,
        nodes: 0,
        clique: Vec::with_capacity(k),
    };
    let words = sub.words;
    for v in 0..m {
        // candidates adjacent to v and later in the order
        let mut cand = vec![0u64; words];
        for (w, (c, &a)) in cand.iter_mut().zip(sub.row(v)).enumerate() {
            *c = a & later_mask(v, w);
        }
        if popcount(&cand) + 1 < k {
            continue;
        }
        search.clique.clear();
        search.clique.push(v);
        if search.expand(cand)? {
            let mut found: Vec<usize> = search.clique.iter().map(|&x| order[x]).collect();
            found.sort_unstable();
            return Ok(Some(found));
        }
    }
    Ok(None)
}

fn later_mask(v: usize, word: usize) -> u64 {
    let first = v + 1;
    match (first / 64).cmp(&word) {
        std::cmp::Ordering::Less => !0,
        std::cmp::Ordering::Greater => 0,
        std::cmp::Ordering::Equal => !0u64 << (first % 64),
    }
}

fn popcount(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

/// Vertices of the `(k - 1)`-core in smallest-last removal order, ties to
/// the smallest id. Every `k`-clique lies in the core, and each of its
/// members other than the first removed comes later in the order.
fn peel_order(g: &CliqueGraph, k: usize) -> Vec<usize> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let remove = |v: usize, removed: &mut Vec<bool>, deg: &mut Vec<usize>| {
        removed[v] = true;
        for u in 0..n {
            if !removed[u] && g.has_edge(u, v) {
                deg[u] -= 1;
            }
        }
    };
    while let Some(v) = (0..n).find(|&v| !removed[v] && deg[v] + 1 < k) {
        remove(v, &mut removed, &mut deg);
    }
    let mut order = Vec::new();
    while let Some(v) = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (deg[v], v)) {
        order.push(v);
        remove(v, &mut removed, &mut deg);
    }
    order
}

struct CliqueSearch<'a> {
    g: &'a CliqueGraph,
    k: usize,
    deadline: Option<Instant>,
    nodes: u64,
    clique: Vec<usize>,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, mut cand: Vec<u64>) -> Result<bool, Timeout> {
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) && self.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(Timeout);
        }
        if self.clique.len() == self.k {
            return Ok(true);
        }
        let need = self.k - self.clique.len();
        if popcount(&cand) < need {
            return Ok(false);
        }
        // greedy coloring; class c holds vertices with bound c
        let mut order: Vec<(usize, usize)> = Vec::new();
        let mut uncolored = cand.clone();
        let mut color = 0;
        while popcount(&uncolored) > 0 {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = first_bit(&q) {
                q[v / 64] &= !(1 << (v % 64));
                uncolored[v / 64] &= !(1 << (v % 64));
                for (x, &a) in q.iter_mut().zip(self.g.row(v)) {
                    *x &= !a;
                }
                order.push((v, color));
            }
        }
        for &(v, c) in order.iter().rev() {
            if c < need {
                return Ok(false);
            }
            self.clique.push(v);
            let next: Vec<u64> = cand.iter().zip(self.g.row(v)).map(|(&a, &b)| a & b).collect();
            if self.expand(next)? {
                return Ok(true);
            }
            self.clique.pop();
            cand[v / 64] &= !(1 << (v % 64));
        }
        Ok(false)
    }
}

fn first_bit(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}

/// Largest radius `R` whose graph of pairs with `d_min >= R` has a `k`-clique,
/// by binary search over the distinct distances. A greedy solution seeds the
/// lower end. With a time budget the search may stop early and report bounds.
pub fn exact<T: Distance>(d: &DistanceMatrix<T>, k: usize, budget: Option<Duration>) -> Result<SolverResult<T>> {
    check_k(d.n(), k)?;
    let mut run = Run::start(Algorithm::Exact, k);
    let deadline = budget.map(|b| Instant::now() + b);
    let radii = unique_distances(d);
    let n = d.n();

    let mut best: Option<Candidate<T>> = None;
    let start = d.max_d_min_pair().map_or(0, |(u, _)| u);
    let greedy = grow_farthest(d, &(0..n).collect::<Vec<_>>(), vec![start], k);
    let greedy_score = crate::metric::diversity(d, &greedy)?;
    // radii[..lo] are known feasible, radii[hi..] known infeasible
    let mut lo = radii.partition_point(|&r| r <= greedy_score);
    if greedy_score > T::ZERO {
        best = Some(Candidate {
            solution: greedy,
            score: greedy_score,
            radius: Some(greedy_score),
            cutoff: None,
        });
    }
    let mut hi = radii.len();
    let mut complete = true;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let r = radii[mid];
        let g = CliqueGraph::from_fn(n, |i, j| d.d_min(i, j) >= r);
        run.stats.clique_searches += 1;
        match k_clique(&g, k, deadline) {
            Ok(Some(clique)) => {
                let score = crate::metric::diversity(d, &clique)?;
                debug_assert!(score >= r);
                lo = radii.partition_point(|&x| x <= score);
                best = Some(Candidate {
                    solution: clique,
                    score,
                    radius: Some(r),
                    cutoff: None,
                });
            }
            Ok(None) => hi = mid,
            Err(Timeout) => {
                complete = false;
                log::warn!("exact search stopped by its time budget at radius {r}");
                break;
            }
        }
    }
    let lower = best.as_ref().map_or(T::ZERO, |b| b.score);
    let bounds = ExactBounds {
        lower,
        refuted: radii.get(hi).copied(),
        complete,
    };
    let mut result = run.finish(d, best, Some(bounds));
    if let Some(b) = result.bounds.as_mut() {
        b.lower = result.score;
    }
    Ok(result)
}
