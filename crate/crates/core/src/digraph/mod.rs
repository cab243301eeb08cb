//! Directed graphs over dense vertex ids `0..n`.

mod cycle;
mod paths;
mod scc;

pub use cycle::{find_chordless_cycle, find_cycle, is_chordless, shortest_cycle_len};
pub use paths::{bfs_distances, find_short_path};
pub use scc::{scc_condensation, Condensation};

use std::collections::VecDeque;

use crate::distance::{Cutoff, Distance};
use crate::metric::DistanceMatrix;

/// Adjacency-list digraph. Out-lists are sorted and free of duplicates and
/// self-loops.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            out: vec![Vec::new(); n],
        }
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut out = vec![Vec::new(); n];
        for (u, v) in arcs {
            assert!(u < n && v < n, "arc ({u}, {v}) out of range for {n} vertices");
            if u != v {
                out[u].push(v);
            }
        }
        for list in &mut out {
            list.sort_unstable();
            list.dedup();
        }
        Digraph { out }
    }

    /// Builds from adjacency lists that are already sorted, deduplicated and loop-free.
    pub(crate) fn from_sorted_lists(out: Vec<Vec<usize>>) -> Self {
        debug_assert!(out
            .iter()
            .enumerate()
            .all(|(u, l)| l.windows(2).all(|w| w[0] < w[1]) && !l.contains(&u)));
        Digraph { out }
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn out(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().map(move |&v| (u, v)))
    }

    pub fn reversed(&self) -> Digraph {
        Digraph::from_arcs(self.n(), self.arcs().map(|(u, v)| (v, u)))
    }

    /// Subgraph induced by `vertices`; local vertex `i` is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Digraph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let out = vertices
            .iter()
            .map(|&v| {
                let mut l: Vec<usize> = self.out[v]
                    .iter()
                    .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                    .collect();
                l.sort_unstable();
                l
            })
            .collect();
        Digraph { out }
    }

    /// Vertices reachable from `source` (including itself).
    pub fn reachable_from(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([source]);
        seen[source] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &self.out[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    pub fn is_acyclic(&self) -> bool {
        find_cycle(self).is_none()
    }
}

/// Digraph on a vertex subset of a distance space with an arc `i -> j`
/// exactly when `d(i, j)` lies strictly below the cutoff.
#[derive(Clone, Debug)]
pub struct ThresholdDigraph<T> {
    /// Original vertex ids; local index `i` stands for `vertices[i]`.
    pub vertices: Vec<usize>,
    pub graph: Digraph,
    pub cutoff: Cutoff<T>,
}

impl<T: Distance> ThresholdDigraph<T> {
    pub fn build(d: &DistanceMatrix<T>, vertices: &[usize], cutoff: Cutoff<T>) -> Self {
        let out = vertices
            .iter()
            .enumerate()
            .map(|(a, &u)| {
                let row = d.row(u);
                vertices
                    .iter()
                    .enumerate()
                    .filter(|&(b, &v)| a != b && cutoff.admits(row[v]))
                    .map(|(b, _)| b)
                    .collect::<Vec<_>>()
            })
            .collect();
        ThresholdDigraph {
            vertices: vertices.to_vec(),
            graph: Digraph::from_sorted_lists(out),
            cutoff,
        }
    }

    /// Arcs in original vertex ids.
    pub fn original_arcs(&self) -> Vec<(usize, usize)> {
        self.graph
            .arcs()
            .map(|(a, b)| (self.vertices[a], self.vertices[b]))
            .collect()
    }
}

pub fn build_threshold_digraph<T: Distance>(
    d: &DistanceMatrix<T>,
    vertices: &[usize],
    cutoff: Cutoff<T>,
) -> ThresholdDigraph<T> {
    ThresholdDigraph::build(d, vertices, cutoff)
}

/// Reachability digraph: `u -> v` iff `v != u` is reachable from `u`.
pub fn transitive_closure(g: &Digraph) -> Digraph {
    let out = (0..g.n())
        .map(|u| {
            g.reachable_from(u)
                .into_iter()
                .enumerate()
                .filter(|&(v, r)| r && v != u)
                .map(|(v, _)| v)
                .collect()
        })
        .collect();
    Digraph { out }
}

/// Weakly connected components, each sorted, ordered by smallest member.
pub fn weak_components(g: &Digraph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut undirected = vec![Vec::new(); n];
    for (u, v) in g.arcs() {
        undirected[u].push(v);
        undirected[v].push(u);
    }
    let mut comp = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            let u = members[i];
            i += 1;
            for &v in &undirected[u] {
                if comp[v] == usize::MAX {
                    comp[v] = id;
                    members.push(v);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    comps
}

/// No arc of `g` joins two members of `set`.
pub fn is_independent(g: &Digraph, set: &[usize]) -> bool {
    let mut member = vec![false; g.n()];
    for &v in set {
        member[v] = true;
    }
    set.iter()
        .all(|&u| g.out(u).iter().all(|&v| !member[v]))
}

/// No member of `set` reaches another member.
pub fn is_antichain(g: &Digraph, set: &[usize]) -> bool {
    let mut member = vec![false; g.n()];
    for &v in set {
        member[v] = true;
    }
    set.iter().all(|&u| {
        g.reachable_from(u)
            .iter()
            .enumerate()
            .all(|(v, &r)| !r || v == u || !member[v])
    })
}
