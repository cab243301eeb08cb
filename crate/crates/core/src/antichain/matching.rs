//! Bipartite matching and the reachability-matching antichain.

use std::collections::VecDeque;

use crate::digraph::{transitive_closure, Digraph};

#[derive(Clone, Debug)]
pub struct Matching {
    pub size: usize,
    /// Right partner of each left vertex.
    pub left: Vec<Option<usize>>,
    /// Left partner of each right vertex.
    pub right: Vec<Option<usize>>,
}

/// Hopcroft-Karp on `adj[u]` = right neighbours of left vertex `u`.
pub fn max_bipartite_matching(right_len: usize, adj: &[Vec<usize>]) -> Matching {
    let left_len = adj.len();
    let mut ml: Vec<Option<usize>> = vec![None; left_len];
    let mut mr: Vec<Option<usize>> = vec![None; right_len];
    let mut dist = vec![usize::MAX; left_len];
    let mut size = 0;
    loop {
        // layer the free left vertices
        let mut queue = VecDeque::new();
        for u in 0..left_len {
            if ml[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match mr[v] {
                    None => found = true,
                    Some(w) if dist[w] == usize::MAX => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }
        let mut next = vec![0usize; left_len];
        for root in 0..left_len {
            if ml[root].is_some() {
                continue;
            }
            // iterative DFS over alternating paths
            let mut stack = vec![root];
            let mut augmented = false;
            while let Some(&u) = stack.last() {
                if next[u] >= adj[u].len() {
                    dist[u] = usize::MAX;
                    stack.pop();
                    continue;
                }
                let v = adj[u][next[u]];
                next[u] += 1;
                match mr[v] {
                    None => {
                        // flip the path: stack[i] takes the right vertex stack[i+1] held
                        let mut right = v;
                        while let Some(x) = stack.pop() {
                            let prev = ml[x];
                            ml[x] = Some(right);
                            mr[right] = Some(x);
                            match prev {
                                Some(p) => right = p,
                                None => break,
                            }
                        }
                        augmented = true;
                        break;
                    }
                    Some(w) if dist[w] == dist[u] + 1 => stack.push(w),
                    Some(_) => {}
                }
            }
            if augmented {
                size += 1;
            }
        }
    }
    Matching {
        size,
        left: ml,
        right: mr,
    }
}

/// Maximum antichain of a DAG through a maximum matching on its reachability
/// relation. Returns members sorted; size is `n - |matching|`.
pub fn antichain_by_matching(g: &Digraph) -> Vec<usize> {
    let n = g.n();
    let tc = transitive_closure(g);
    let adj: Vec<Vec<usize>> = (0..n).map(|u| tc.out(u).to_vec()).collect();
    let m = max_bipartite_matching(n, &adj);

    // Z: vertices reachable from free left vertices along alternating paths
    let mut zl = vec![false; n];
    let mut zr = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&u| m.left[u].is_none()).collect();
    for &u in &queue {
        zl[u] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if zr[v] || m.left[u] == Some(v) {
                continue;
            }
            zr[v] = true;
            if let Some(w) = m.right[v] {
                if !zl[w] {
                    zl[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    // cover = (L \ Z) + (R & Z); the antichain avoids it on both sides
    let members: Vec<usize> = (0..n).filter(|&v| zl[v] && !zr[v]).collect();
    debug_assert_eq!(members.len(), n - m.size);
    members
}
