//! Integral flows with lower bounds.
//!
//! [`FlowNetwork::max_flow`] is Dinic's algorithm on the residual network.
//! [`FlowNetwork::min_flow_with_demands`] starts from a feasible flow and
//! pushes as much flow as possible back from the sink to the source, where an
//! arc carrying `f` with bounds `[l, c]` offers `c - f` forward and `f - l`
//! backward residual capacity.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Capacity standing in for "unbounded".
pub const UNBOUNDED: i64 = i64::MAX / 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlowArc {
    pub tail: usize,
    pub head: usize,
    pub lower: i64,
    pub capacity: i64,
    pub flow: i64,
}

#[derive(Clone, Debug)]
pub struct FlowNetwork {
    nodes: usize,
    pub source: usize,
    pub sink: usize,
    arcs: Vec<FlowArc>,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Self {
        assert!(source < nodes && sink < nodes && source != sink);
        FlowNetwork {
            nodes,
            source,
            sink,
            arcs: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn arcs(&self) -> &[FlowArc] {
        &self.arcs
    }

    pub fn add_arc(&mut self, tail: usize, head: usize, lower: i64, capacity: i64) -> usize {
        assert!(tail < self.nodes && head < self.nodes);
        self.arcs.push(FlowArc {
            tail,
            head,
            lower,
            capacity,
            flow: 0,
        });
        self.arcs.len() - 1
    }

    /// Overwrites the current flow assignment, one entry per arc.
    pub fn set_flow(&mut self, flow: &[i64]) {
        assert_eq!(flow.len(), self.arcs.len());
        for (a, &f) in self.arcs.iter_mut().zip(flow) {
            a.flow = f;
        }
    }

    /// Net flow out of the source.
    pub fn value(&self) -> i64 {
        self.arcs
            .iter()
            .map(|a| {
                (a.tail == self.source) as i64 * a.flow - (a.head == self.source) as i64 * a.flow
            })
            .sum()
    }

    /// Bounds hold on every arc and flow is conserved at non-terminal nodes.
    pub fn is_feasible(&self) -> bool {
        let mut excess = vec![0i64; self.nodes];
        for a in &self.arcs {
            if a.flow < a.lower || a.flow > a.capacity {
                return false;
            }
            excess[a.tail] -= a.flow;
            excess[a.head] += a.flow;
        }
        excess
            .iter()
            .enumerate()
            .all(|(v, &e)| e == 0 || v == self.source || v == self.sink)
    }

    fn check_bounds(&self) -> Result<()> {
        match self
            .arcs
            .iter()
            .position(|a| a.lower < 0 || a.lower > a.capacity)
        {
            Some(arc) => Err(Error::BadBounds { arc }),
            None => Ok(()),
        }
    }

    /// Maximum flow from source to sink on a network without lower bounds,
    /// starting from zero flow.
    pub fn max_flow(&mut self) -> Result<i64> {
        self.check_bounds()?;
        if self.arcs.iter().any(|a| a.lower != 0) {
            return Err(Error::BadBounds {
                arc: self.arcs.iter().position(|a| a.lower != 0).unwrap_or(0),
            });
        }
        for a in &mut self.arcs {
            a.flow = 0;
        }
        let (s, t) = (self.source, self.sink);
        let pushed = self.augment(s, t);
        Ok(pushed)
    }

    /// Minimum feasible source-sink flow. Uses the current assignment as the
    /// starting point when it is feasible, otherwise finds one first.
    pub fn min_flow_with_demands(&mut self) -> Result<i64> {
        self.check_bounds()?;
        if !self.is_feasible() {
            self.find_feasible()?;
        }
        let (s, t) = (self.source, self.sink);
        self.augment(t, s);
        debug_assert!(self.is_feasible());
        Ok(self.value())
    }

    /// Feasible flow via the standard circulation reduction: a `t -> s`
    /// return arc plus a super source and sink carrying the lower bounds.
    fn find_feasible(&mut self) -> Result<()> {
        let n = self.nodes;
        let (ss, tt) = (n, n + 1);
        let mut aux = FlowNetwork::new(n + 2, ss, tt);
        let mut balance = vec![0i64; n];
        for a in &self.arcs {
            aux.add_arc(a.tail, a.head, 0, a.capacity - a.lower);
            balance[a.head] += a.lower;
            balance[a.tail] -= a.lower;
        }
        aux.add_arc(self.sink, self.source, 0, UNBOUNDED);
        let mut need = 0;
        for (v, &b) in balance.iter().enumerate() {
            if b > 0 {
                aux.add_arc(ss, v, 0, b);
                need += b;
            } else if b < 0 {
                aux.add_arc(v, tt, 0, -b);
            }
        }
        if aux.max_flow()? != need {
            return Err(Error::Infeasible);
        }
        for (a, x) in self.arcs.iter_mut().zip(&aux.arcs) {
            a.flow = a.lower + x.flow;
        }
        Ok(())
    }

    /// Dinic from `from` to `to` on the residual network of the current flow.
    /// Returns the amount pushed and updates the arc flows.
    fn augment(&mut self, from: usize, to: usize) -> i64 {
        let mut res = Residual::new(self.nodes, &self.arcs);
        let pushed = res.dinic(from, to);
        for (i, a) in self.arcs.iter_mut().enumerate() {
            a.flow = a.capacity - res.cap[2 * i];
        }
        pushed
    }

    /// Nodes reachable from `start` in the residual network of the current flow.
    pub fn residual_reachable(&self, start: usize) -> Vec<bool> {
        let res = Residual::new(self.nodes, &self.arcs);
        let mut seen = vec![false; self.nodes];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &e in &res.adj[u] {
                let v = res.to[e];
                if res.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}

/// Paired residual edges: `2i` is arc `i` forward (`c - f`), `2i + 1` backward (`f - l`).
struct Residual {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    level: Vec<usize>,
    next: Vec<usize>,
}

impl Residual {
    fn new(nodes: usize, arcs: &[FlowArc]) -> Self {
        let mut adj = vec![Vec::new(); nodes];
        let mut to = Vec::with_capacity(arcs.len() * 2);
        let mut cap = Vec::with_capacity(arcs.len() * 2);
        for (i, a) in arcs.iter().enumerate() {
            adj[a.tail].push(2 * i);
            to.push(a.head);
            cap.push(a.capacity - a.flow);
            adj[a.head].push(2 * i + 1);
            to.push(a.tail);
            cap.push(a.flow - a.lower);
        }
        Residual {
            adj,
            to,
            cap,
            level: vec![0; nodes],
            next: vec![0; nodes],
        }
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = usize::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && self.level[v] == usize::MAX {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[t] != usize::MAX
    }

    /// Blocking flow by iterative DFS along level-increasing edges.
    fn blocking(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        let mut path: Vec<usize> = Vec::new();
        let mut u = s;
        loop {
            if u == t {
                let bottleneck = path.iter().map(|&e| self.cap[e]).min().unwrap_or(0);
                for &e in &path {
                    self.cap[e] -= bottleneck;
                    self.cap[e ^ 1] += bottleneck;
                }
                total += bottleneck;
                path.clear();
                u = s;
                continue;
            }
            let mut advanced = false;
            while self.next[u] < self.adj[u].len() {
                let e = self.adj[u][self.next[u]];
                let v = self.to[e];
                if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 {
                    path.push(e);
                    u = v;
                    advanced = true;
                    break;
                }
                self.next[u] += 1;
            }
            if advanced {
                continue;
            }
            // dead end: retreat
            if u == s {
                return total;
            }
            self.level[u] = usize::MAX;
            let e = path.pop().expect("non-source node has an entering edge");
            u = self.to[e ^ 1];
            self.next[u] += 1;
        }
    }

    fn dinic(&mut self, s: usize, t: usize) -> i64 {
        let mut total: i64 = 0;
        while self.bfs(s, t) {
            self.next.iter_mut().for_each(|x| *x = 0);
            let f = self.blocking(s, t);
            if f == 0 {
                break;
            }
            total = total.saturating_add(f);
        }
        total
    }
}
