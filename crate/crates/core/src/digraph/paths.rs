use std::collections::VecDeque;

use super::Digraph;

/// Hop distances from `source`, `usize::MAX` when unreachable.
pub fn bfs_distances(g: &Digraph, source: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &v in g.out(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// A shortest path with exactly `target_len` vertices if one exists, otherwise
/// a shortest path realizing the largest finite hop distance.
///
/// Sources are scanned in increasing id order, and targets within a source
/// likewise, so the first qualifying pair wins. Being a shortest path, the
/// result has no forward shortcut arcs; on a DAG it has no backward arcs
/// either, so every other vertex of it is an independent set.
pub fn find_short_path(g: &Digraph, target_len: usize) -> Vec<usize> {
    assert!(target_len >= 1, "paths have at least one vertex");
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let want = target_len - 1;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut best: (usize, usize, usize) = (0, 0, 0);
    let mut best_path: Vec<usize> = vec![0];
    let mut queue = VecDeque::new();

    for s in 0..n {
        dist.iter_mut().for_each(|x| *x = usize::MAX);
        dist[s] = 0;
        parent[s] = usize::MAX;
        queue.clear();
        queue.push_back(s);
        let mut reached = vec![s];
        while let Some(u) = queue.pop_front() {
            if dist[u] == want {
                continue;
            }
            for &v in g.out(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    reached.push(v);
                    queue.push_back(v);
                }
            }
        }
        reached.sort_unstable();
        let trace = |t: usize| {
            let mut path = vec![t];
            let mut cur = t;
            while cur != s {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            path
        };
        if let Some(&t) = reached.iter().find(|&&t| dist[t] == want) {
            return trace(t);
        }
        let far = reached.iter().map(|&t| dist[t]).max().unwrap_or(0);
        if far > best.0 {
            let t = *reached.iter().find(|&&t| dist[t] == far).expect("max is attained");
            best = (far, s, t);
            best_path = trace(t);
        }
    }
    best_path
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::is_independent;
    use proptest::prelude::*;

    #[test]
    fn path_prefix() {
        let g = Digraph::from_arcs(7, (0..6).map(|i| (i, i + 1)));
        assert_eq!(find_short_path(&g, 5), vec![0, 1, 2, 3, 4]);
        assert_eq!(find_short_path(&g, 1), vec![0]);
        assert_eq!(find_short_path(&g, 20), (0..7).collect::<Vec<_>>());
    }

    #[test]
    fn transitive_tournament_is_flat() {
        let n = 6;
        let g = Digraph::from_arcs(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))));
        assert_eq!(find_short_path(&g, 5), vec![0, 1]);
    }

    #[test]
    fn edgeless_gives_single_vertex() {
        assert_eq!(find_short_path(&Digraph::new(3), 4), vec![0]);
    }

    fn arb_dag(max_n: usize) -> impl Strategy<Value = Digraph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(proptest::bool::weighted(0.12), n * n).prop_map(move |bits| {
                Digraph::from_arcs(
                    n,
                    (0..n)
                        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                        .filter(|&(i, j)| bits[i * n + j]),
                )
            })
        })
    }

    /// Hop distance via relaxation over a topological order (ids), independent of BFS.
    fn dag_hops(g: &Digraph) -> Vec<Vec<usize>> {
        let n = g.n();
        let mut h = vec![vec![usize::MAX; n]; n];
        for s in 0..n {
            h[s][s] = 0;
            for u in s..n {
                if h[s][u] == usize::MAX {
                    continue;
                }
                for &v in g.out(u) {
                    h[s][v] = h[s][v].min(h[s][u] + 1);
                }
            }
        }
        h
    }

    proptest! {
        #[test]
        fn short_path_matches_hop_oracle(g in arb_dag(30), target in 1usize..8) {
            let h = dag_hops(&g);
            let want = target - 1;
            let p = find_short_path(&g, target);
            let (s, t) = (p[0], *p.last().unwrap());
            // consecutive arcs exist, and the path is shortest
            for w in p.windows(2) { prop_assert!(g.has_arc(w[0], w[1])); }
            prop_assert_eq!(h[s][t], p.len() - 1);
            let n = g.n();
            let exists = (0..n).any(|a| (0..n).any(|b| h[a][b] == want));
            if exists {
                prop_assert_eq!(p.len(), target);
                let first = (0..n)
                    .flat_map(|a| (0..n).map(move |b| (a, b)))
                    .find(|&(a, b)| h[a][b] == want)
                    .unwrap();
                prop_assert_eq!((s, t), first);
            } else {
                let longest = (0..n)
                    .flat_map(|a| h[a].iter().copied())
                    .filter(|&x| x != usize::MAX)
                    .max()
                    .unwrap();
                prop_assert_eq!(p.len() - 1, longest);
            }
            let odd: Vec<usize> = p.iter().copied().step_by(2).collect();
            prop_assert!(is_independent(&g, &odd));
            for (i, &u) in p.iter().enumerate() {
                let d = bfs_distances(&g, u);
                for (j, &v) in p.iter().enumerate() {
                    if j > i { prop_assert_eq!(d[v], j - i); }
                }
            }
        }
    }
}
