use super::Digraph;

/// DAG of strongly connected components.
///
/// Components are numbered in topological order: every dag arc goes from a
/// lower to a higher component index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condensation {
    pub dag: Digraph,
    /// Sorted members of each component.
    pub members: Vec<Vec<usize>>,
    pub comp_of: Vec<usize>,
}

impl Condensation {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Smallest vertex id of component `c`.
    pub fn representative(&self, c: usize) -> usize {
        self.members[c][0]
    }
}

/// Tarjan's algorithm, iterative so deep graphs cannot overflow the stack.
pub fn scc_condensation(g: &Digraph) -> Condensation {
    let n = g.n();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    // (vertex, next out-neighbour position)
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut next_index = 0;
    let mut comps_rev: Vec<Vec<usize>> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(top) = call.last_mut() {
            let u = top.0;
            if let Some(&v) = g.out(u).get(top.1) {
                top.1 += 1;
                if index[v] == UNSEEN {
                    index[v] = next_index;
                    low[v] = next_index;
                    next_index += 1;
                    stack.push(v);
                    on_stack[v] = true;
                    call.push((v, 0));
                } else if on_stack[v] {
                    low[u] = low[u].min(index[v]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[u]);
            }
            if low[u] == index[u] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == u {
                        break;
                    }
                }
                comp.sort_unstable();
                comps_rev.push(comp);
            }
        }
    }

    // Tarjan emits sinks first.
    comps_rev.reverse();
    let members = comps_rev;
    let mut comp_of = vec![0; n];
    for (c, m) in members.iter().enumerate() {
        for &v in m {
            comp_of[v] = c;
        }
    }
    let dag = Digraph::from_arcs(
        members.len(),
        g.arcs()
            .map(|(u, v)| (comp_of[u], comp_of[v]))
            .filter(|(a, b)| a != b),
    );
    Condensation {
        dag,
        members,
        comp_of,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::tests::{arb_digraph, reach_matrix};
    use proptest::prelude::*;

    #[test]
    fn dag_gives_singletons() {
        let g = Digraph::from_arcs(4, [(0, 1), (0, 2), (2, 3), (1, 3)]);
        let c = scc_condensation(&g);
        assert_eq!(c.len(), 4);
        assert!(c.members.iter().all(|m| m.len() == 1));
        assert_eq!(c.dag.arc_count(), 4);
        for (u, v) in g.arcs() {
            assert!(c.dag.has_arc(c.comp_of[u], c.comp_of[v]));
        }
    }

    #[test]
    fn single_cycle_collapses() {
        let g = Digraph::from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 0)]);
        let c = scc_condensation(&g);
        assert_eq!(c.members, vec![vec![0, 1, 2, 3]]);
        assert_eq!(c.dag.arc_count(), 0);
    }

    #[test]
    fn long_path_does_not_overflow() {
        let n = 200_000;
        let g = Digraph::from_arcs(n, (0..n - 1).map(|i| (i, i + 1)));
        let c = scc_condensation(&g);
        assert_eq!(c.len(), n);
        assert_eq!(c.comp_of[0], 0);
        assert_eq!(c.comp_of[n - 1], n - 1);
    }

    proptest! {
        #[test]
        fn matches_mutual_reachability(g in arb_digraph(8, 0.25)) {
            let r = reach_matrix(&g);
            let c = scc_condensation(&g);
            let n = g.n();
            for u in 0..n {
                for v in 0..n {
                    let same = u == v || (r[u][v] && r[v][u]);
                    prop_assert_eq!(c.comp_of[u] == c.comp_of[v], same);
                }
            }
            prop_assert!(c.dag.is_acyclic());
            for (a, b) in c.dag.arcs() {
                prop_assert!(a < b);
            }
            // comp_of(u) reaches comp_of(v) in the dag iff u reaches v
            let rc = reach_matrix(&c.dag);
            for u in 0..n {
                for v in 0..n {
                    let (cu, cv) = (c.comp_of[u], c.comp_of[v]);
                    let dag_reach = cu == cv || rc[cu][cv];
                    prop_assert_eq!(dag_reach, u == v || r[u][v] || c.comp_of[u] == c.comp_of[v]);
                }
            }
        }
    }
}
