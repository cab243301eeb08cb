use std::collections::VecDeque;

use super::Digraph;

/// Some directed cycle `v_0 -> v_1 -> ... -> v_{l-1} -> v_0`, found by
/// depth-first search from the smallest vertex.
pub fn find_cycle(g: &Digraph) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Grey,
        Black,
    }
    let n = g.n();
    let mut color = vec![Color::White; n];
    let mut call: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if color[root] != Color::White {
            continue;
        }
        color[root] = Color::Grey;
        call.push((root, 0));
        while let Some(top) = call.last_mut() {
            let u = top.0;
            if let Some(&v) = g.out(u).get(top.1) {
                top.1 += 1;
                match color[v] {
                    Color::White => {
                        color[v] = Color::Grey;
                        call.push((v, 0));
                    }
                    Color::Grey => {
                        let start = call
                            .iter()
                            .position(|&(w, _)| w == v)
                            .expect("grey vertex is on the stack");
                        return Some(call[start..].iter().map(|&(w, _)| w).collect());
                    }
                    Color::Black => {}
                }
            } else {
                color[u] = Color::Black;
                call.pop();
            }
        }
    }
    None
}

/// A cycle with no arc, in either direction, between two vertices that are
/// not adjacent on the cycle. `None` iff `g` is acyclic.
///
/// Any cycle is shrunk by rerouting through its first chord until none is
/// left; each reroute strictly shortens the cycle.
pub fn find_chordless_cycle(g: &Digraph) -> Option<Vec<usize>> {
    let mut cycle = find_cycle(g)?;
    let mut pos = vec![usize::MAX; g.n()];
    loop {
        let l = cycle.len();
        for (i, &v) in cycle.iter().enumerate() {
            pos[v] = i;
        }
        let chord = cycle.iter().enumerate().find_map(|(i, &u)| {
            g.out(u).iter().find_map(|&v| {
                let p = pos[v];
                (p != usize::MAX && p != (i + 1) % l && (p + 1) % l != i).then_some((i, p))
            })
        });
        for &v in &cycle {
            pos[v] = usize::MAX;
        }
        match chord {
            // u = cycle[i] -> cycle[p] -> cycle[p+1] -> ... -> cycle[i]
            Some((i, p)) => {
                let len = (i + l - p) % l + 1;
                cycle = (0..len).map(|s| cycle[(p + s) % l]).collect();
            }
            None => return Some(cycle),
        }
    }
}

/// Checks that `cycle` is a directed cycle of `g` without chords.
pub fn is_chordless(g: &Digraph, cycle: &[usize]) -> bool {
    let l = cycle.len();
    if l < 2 {
        return false;
    }
    let is_cycle = (0..l).all(|i| g.has_arc(cycle[i], cycle[(i + 1) % l]));
    let mut distinct = cycle.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if !is_cycle || distinct.len() != l {
        return false;
    }
    (0..l).all(|i| {
        (0..l).all(|j| {
            let consecutive = i == j || (i + 1) % l == j || (j + 1) % l == i;
            consecutive || !g.has_arc(cycle[i], cycle[j])
        })
    })
}

/// Number of vertices on a shortest directed cycle, `None` for acyclic graphs.
pub fn shortest_cycle_len(g: &Digraph) -> Option<usize> {
    let n = g.n();
    let rev = g.reversed();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    for s in 0..n {
        dist.iter_mut().for_each(|x| *x = usize::MAX);
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in g.out(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        for &u in rev.out(s) {
            if dist[u] != usize::MAX {
                let len = dist[u] + 1;
                best = Some(best.map_or(len, |b| b.min(len)));
            }
        }
    }
    best
}
