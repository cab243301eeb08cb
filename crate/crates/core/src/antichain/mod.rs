//! Maximum antichains of DAGs.
//!
//! The primary route reduces to a minimum flow with unit demands on vertex
//! arcs; the matching route works on the transitive closure and is kept as an
//! independent check.

mod flow;
mod matching;

pub use flow::{FlowArc, FlowNetwork, UNBOUNDED};
pub use matching::{antichain_by_matching, max_bipartite_matching, Matching};

use serde::{Deserialize, Serialize};

use crate::digraph::{is_antichain, scc_condensation, Digraph};
use crate::error::{Error, Result};

/// Largest DAG for which debug builds cross-check against the matching route.
const DEBUG_ORACLE_LIMIT: usize = 200;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AntichainBackend {
    #[default]
    Flow,
    Matching,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntichainResult {
    /// Sorted vertex ids.
    pub members: Vec<usize>,
    pub size: usize,
    /// Members were re-checked to be pairwise unreachable.
    pub certificate: bool,
}

impl AntichainResult {
    fn certify(g: &Digraph, members: Vec<usize>) -> Self {
        let certificate = is_antichain(g, &members);
        AntichainResult {
            size: members.len(),
            members,
            certificate,
        }
    }
}

pub const SOURCE: usize = 0;
pub const SINK: usize = 1;

pub fn in_node(v: usize) -> usize {
    2 + 2 * v
}

pub fn out_node(v: usize) -> usize {
    3 + 2 * v
}

/// Demand network of a DAG: `s -> v_in`, `v_in -> v_out` with demand 1,
/// `v_out -> t` per vertex, then `u_out -> v_in` per arc, all uncapacitated.
/// Carries the feasible flow that routes one unit through every vertex.
pub fn build_ma_network(g: &Digraph) -> Result<FlowNetwork> {
    if !g.is_acyclic() {
        return Err(Error::Cyclic);
    }
    let n = g.n();
    let mut net = FlowNetwork::new(2 * n + 2, SOURCE, SINK);
    for v in 0..n {
        net.add_arc(SOURCE, in_node(v), 0, UNBOUNDED);
        net.add_arc(in_node(v), out_node(v), 1, UNBOUNDED);
        net.add_arc(out_node(v), SINK, 0, UNBOUNDED);
    }
    for (u, v) in g.arcs() {
        net.add_arc(out_node(u), in_node(v), 0, UNBOUNDED);
    }
    let mut initial = vec![1; 3 * n];
    initial.resize(net.arcs().len(), 0);
    net.set_flow(&initial);
    Ok(net)
}

/// Maximum antichain via minimum flow. With `X` the nodes reachable from the
/// sink in the final residual network, `v` is a member iff `v_out` is in `X`
/// and `v_in` is not.
pub fn max_antichain(g: &Digraph) -> Result<AntichainResult> {
    let mut net = build_ma_network(g)?;
    let value = net.min_flow_with_demands()?;
    let x = net.residual_reachable(SINK);
    let members: Vec<usize> = (0..g.n())
        .filter(|&v| x[out_node(v)] && !x[in_node(v)])
        .collect();
    debug_assert_eq!(members.len() as i64, value);
    let result = AntichainResult::certify(g, members);
    debug_assert!(result.certificate, "flow cut is not an antichain");
    #[cfg(debug_assertions)]
    if g.n() <= DEBUG_ORACLE_LIMIT {
        debug_assert_eq!(result.size, antichain_by_matching(g).len());
    }
    Ok(result)
}

/// Maximum antichain via bipartite matching on the reachability relation.
pub fn max_antichain_oracle(g: &Digraph) -> Result<AntichainResult> {
    if !g.is_acyclic() {
        return Err(Error::Cyclic);
    }
    Ok(AntichainResult::certify(g, antichain_by_matching(g)))
}

pub fn max_antichain_with(g: &Digraph, backend: AntichainBackend) -> Result<AntichainResult> {
    match backend {
        AntichainBackend::Flow => max_antichain(g),
        AntichainBackend::Matching => max_antichain_oracle(g),
    }
}

/// Maximum antichain of an arbitrary digraph, as vertices of `g`: solved on
/// the condensation, each component contributing its smallest member.
pub fn max_antichain_any(g: &Digraph, backend: AntichainBackend) -> Vec<usize> {
    let c = scc_condensation(g);
    let on_dag = max_antichain_with(&c.dag, backend).expect("condensation is acyclic");
    let mut members: Vec<usize> = on_dag.members.iter().map(|&x| c.representative(x)).collect();
    members.sort_unstable();
    members
}
