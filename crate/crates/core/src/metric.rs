//! Asymmetric pseudometric spaces.
//!
//! A [`DistanceMatrix`] holds the directed distances `d(i, j)` of a finite
//! space. The triangle inequality `d(i, j) <= d(i, w) + d(w, j)` is required in
//! the directed form only; `d(i, j)` and `d(j, i)` may differ, and distinct
//! points may be at distance zero.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use crate::digraph::{scc_condensation, Digraph};
use crate::distance::Distance;
use crate::error::{Error, Result};

/// Dense `n x n` table of directed distances with optional vertex labels.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix<T = u64> {
    n: usize,
    data: Vec<T>,
    labels: Option<Vec<String>>,
}

impl<T: Distance> DistanceMatrix<T> {
    /// Builds a matrix from rows. Only the shape is checked here; use
    /// [`validate_pseudometric`] for the metric axioms.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Shape {
                rows: 0,
                row: 0,
                len: 0,
            });
        }
        let mut data = Vec::with_capacity(n * n);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != n {
                return Err(Error::Shape {
                    rows: n,
                    row,
                    len: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(DistanceMatrix {
            n,
            data,
            labels: None,
        })
    }

    /// Builds a matrix from a row-major buffer of length `n * n`.
    pub fn from_flat(n: usize, data: Vec<T>) -> Result<Self> {
        if n == 0 || data.len() != n * n {
            return Err(Error::Shape {
                rows: n,
                row: 0,
                len: data.len(),
            });
        }
        Ok(DistanceMatrix {
            n,
            data,
            labels: None,
        })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(n > 0, "empty distance matrix");
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        DistanceMatrix {
            n,
            data,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::parse(
                "labels",
                format!("{} labels for {} points", labels.len(), self.n),
            ));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of vertex `i`, falling back to its index.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.n)
    }

    #[inline]
    pub fn d_min(&self, u: usize, v: usize) -> T {
        self.get(u, v).min(self.get(v, u))
    }

    #[inline]
    pub fn d_max(&self, u: usize, v: usize) -> T {
        self.get(u, v).max(self.get(v, u))
    }

    /// Symmetric view with entries `d_min(u, v)`.
    pub fn d_min_matrix(&self) -> Self {
        let mut m = DistanceMatrix::from_fn(self.n, |u, v| self.d_min(u, v));
        m.labels.clone_from(&self.labels);
        m
    }

    /// Symmetric view with entries `d_max(u, v)`; a pseudometric whenever `self` is.
    pub fn d_max_matrix(&self) -> Self {
        let mut m = DistanceMatrix::from_fn(self.n, |u, v| self.d_max(u, v));
        m.labels.clone_from(&self.labels);
        m
    }

    /// Submatrix over `vertices`, in the given order, carrying labels along.
    pub fn restrict(&self, vertices: &[usize]) -> Self {
        let mut m = DistanceMatrix::from_fn(vertices.len(), |a, b| {
            self.get(vertices[a], vertices[b])
        });
        m.labels = Some(vertices.iter().map(|&v| self.label(v)).collect());
        m
    }

    /// The pair `u < v` maximizing `d_min(u, v)`; ties go to the
    /// lexicographically smallest pair. `None` when `n < 2`.
    pub fn max_d_min_pair(&self) -> Option<(usize, usize)> {
        max_d_min_pair_within(self, &(0..self.n).collect::<Vec<_>>())
    }

    /// Smallest and largest off-diagonal distance; `None` when `n < 2`.
    pub fn off_diagonal_range(&self) -> Option<(T, T)> {
        let mut lo: Option<T> = None;
        let mut hi: Option<T> = None;
        for i in 0..self.n {
            for j in 0..self.n {
                if i == j {
                    continue;
                }
                let d = self.get(i, j);
                lo = Some(lo.map_or(d, |x| x.min(d)));
                hi = Some(hi.map_or(d, |x| x.max(d)));
            }
        }
        lo.zip(hi)
    }
}

pub(crate) fn max_d_min_pair_within<T: Distance>(
    d: &DistanceMatrix<T>,
    vertices: &[usize],
) -> Option<(usize, usize)> {
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    let mut best: Option<(T, usize, usize)> = None;
    for (a, &u) in sorted.iter().enumerate() {
        for &v in &sorted[a + 1..] {
            let w = d.d_min(u, v);
            if best.is_none_or(|(b, _, _)| w > b) {
                best = Some((w, u, v));
            }
        }
    }
    best.map(|(_, u, v)| (u, v))
}

/// `min_{u != v in S} d(u, v)`. Duplicate entries in `set` are ignored.
pub fn diversity<T: Distance>(d: &DistanceMatrix<T>, set: &[usize]) -> Result<T> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&v) = s.last().filter(|&&v| v >= d.n()) {
        return Err(Error::VertexOutOfRange { vertex: v, n: d.n() });
    }
    if s.len() < 2 {
        return Err(Error::TooFewPoints(s.len()));
    }
    let mut best: Option<T> = None;
    for (a, &u) in s.iter().enumerate() {
        for &v in &s[a + 1..] {
            let w = d.d_min(u, v);
            best = Some(best.map_or(w, |b| b.min(w)));
        }
    }
    Ok(best.expect("at least one pair"))
}

/// Number of distinct off-diagonal distances, zero included.
pub fn distinct_distance_count<T: Distance>(d: &DistanceMatrix<T>) -> usize {
    let mut values: Vec<T> = (0..d.n())
        .flat_map(|i| d.row(i).iter().enumerate().filter(move |&(j, _)| j != i).map(|(_, &x)| x))
        .collect();
    values.sort_unstable();
    values.dedup();
    values.len()
}

/// Strictly increasing list of the distinct positive off-diagonal distances.
pub fn unique_distances<T: Distance>(d: &DistanceMatrix<T>) -> Vec<T> {
    let mut values: Vec<T> = Vec::new();
    for i in 0..d.n() {
        for (j, &x) in d.row(i).iter().enumerate() {
            if i != j && x > T::ZERO {
                values.push(x);
            }
        }
    }
    values.sort_unstable();
    values.dedup();
    values
}

/// Smallest `eps` with `(1 + eps) * d_min >= d_max` over all pairs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EpsilonSymmetry {
    Finite(f64),
    /// Some pair has `d_min = 0 < d_max`.
    Unbounded,
}

impl fmt::Display for EpsilonSymmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EpsilonSymmetry::Finite(e) => write!(f, "{e}"),
            EpsilonSymmetry::Unbounded => f.write_str("unbounded"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    Diagonal { i: usize, value: f64 },
    Negative { i: usize, j: usize, value: f64 },
    /// `d(i, j) > d(i, w) + d(w, j)`; `slack = d(i,w) + d(w,j) - d(i,j) < 0`.
    Triangle { i: usize, w: usize, j: usize, slack: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub is_pseudometric: bool,
    /// The first [`ValidationReport::MAX_LISTED`] violations found.
    pub violations: Vec<Violation>,
    pub violation_count: usize,
    pub epsilon_symmetry: EpsilonSymmetry,
}

impl ValidationReport {
    pub const MAX_LISTED: usize = 1000;
}

/// Checks the zero diagonal, nonnegativity and every directed triangle
/// `(i, w, j)`. `tol` adds to the tolerance of the distance type.
pub fn validate_pseudometric<T: Distance>(d: &DistanceMatrix<T>, tol: f64) -> ValidationReport {
    let n = d.n();
    let mut violations = Vec::new();
    let mut count = 0usize;
    let mut record = |v: Violation| {
        if violations.len() < ValidationReport::MAX_LISTED {
            violations.push(v);
        }
        count += 1;
    };
    for i in 0..n {
        if d.get(i, i) != T::ZERO {
            record(Violation::Diagonal {
                i,
                value: d.get(i, i).to_f64(),
            });
        }
        for j in 0..n {
            if d.get(i, j).is_negative() {
                record(Violation::Negative {
                    i,
                    j,
                    value: d.get(i, j).to_f64(),
                });
            }
        }
    }
    for i in 0..n {
        let row_i = d.row(i);
        for w in 0..n {
            let diw = row_i[w];
            let row_w = d.row(w);
            for j in 0..n {
                if let Some(slack) = T::triangle_violation(row_i[j], diw, row_w[j]) {
                    if slack < -tol {
                        record(Violation::Triangle { i, w, j, slack });
                    }
                }
            }
        }
    }
    ValidationReport {
        is_pseudometric: count == 0,
        violations,
        violation_count: count,
        epsilon_symmetry: epsilon_symmetry(d),
    }
}

pub fn epsilon_symmetry<T: Distance>(d: &DistanceMatrix<T>) -> EpsilonSymmetry {
    let mut eps: f64 = 0.0;
    for u in 0..d.n() {
        for v in u + 1..d.n() {
            let (lo, hi) = (d.d_min(u, v), d.d_max(u, v));
            if hi == T::ZERO {
                continue;
            }
            if lo <= T::ZERO {
                return EpsilonSymmetry::Unbounded;
            }
            eps = eps.max(hi.to_f64() / lo.to_f64() - 1.0);
        }
    }
    EpsilonSymmetry::Finite(eps)
}

/// A digraph with nonnegative arc weights. Self-loops are ignored.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedDigraph<T = u64> {
    pub n: usize,
    pub arcs: Vec<(usize, usize, T)>,
    pub labels: Option<Vec<String>>,
}

impl<T: Distance> WeightedDigraph<T> {
    pub fn new(n: usize) -> Self {
        WeightedDigraph {
            n,
            arcs: Vec::new(),
            labels: None,
        }
    }

    pub fn add_arc(&mut self, u: usize, v: usize, w: T) {
        assert!(u < self.n && v < self.n, "arc endpoint out of range");
        self.arcs.push((u, v, w));
    }

    /// Complete digraph whose arc weights are the entries of `d`.
    pub fn from_matrix(d: &DistanceMatrix<T>) -> Self {
        let mut g = WeightedDigraph::new(d.n());
        for i in 0..d.n() {
            for j in 0..d.n() {
                if i != j {
                    g.arcs.push((i, j, d.get(i, j)));
                }
            }
        }
        g.labels = d.labels().map(<[String]>::to_vec);
        g
    }

    fn label(&self, v: usize) -> String {
        self.labels
            .as_ref()
            .map_or_else(|| v.to_string(), |l| l[v].clone())
    }
}

/// Vertex set of the largest strongly connected component; ties go to the
/// component containing the smallest vertex id. Sorted ascending.
pub fn largest_scc<T: Distance>(w: &WeightedDigraph<T>) -> Vec<usize> {
    let g = Digraph::from_arcs(w.n, w.arcs.iter().map(|&(u, v, _)| (u, v)));
    let cond = scc_condensation(&g);
    cond.members
        .into_iter()
        .max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])))
        .unwrap_or_default()
}

/// Shortest-path distances within the largest strongly connected component of
/// `w`. Output labels are the original labels (or original vertex ids).
pub fn metric_closure<T: Distance>(w: &WeightedDigraph<T>) -> Result<DistanceMatrix<T>> {
    if w.n == 0 {
        return Err(Error::EmptyGraph);
    }
    let keep = largest_scc(w);
    let n = keep.len();
    let mut local = vec![usize::MAX; w.n];
    for (i, &v) in keep.iter().enumerate() {
        local[v] = i;
    }

    let mut adj: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
    let mut max_weight = T::ZERO;
    for &(u, v, wt) in &w.arcs {
        if wt.is_negative() {
            return Err(Error::NegativeDistance {
                i: u,
                j: v,
                value: wt.to_string(),
            });
        }
        if u == v || local[u] == usize::MAX || local[v] == usize::MAX {
            continue;
        }
        max_weight = max_weight.max(wt);
        adj[local[u]].push((local[v], wt));
    }
    if max_weight.checked_scale(n as u64).is_none() {
        return Err(Error::Overflow {
            n,
            max_weight: max_weight.to_string(),
        });
    }

    let mut data = Vec::with_capacity(n * n);
    let mut dist: Vec<Option<T>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    for s in 0..n {
        dist.iter_mut().for_each(|x| *x = None);
        dist[s] = Some(T::ZERO);
        heap.push(Reverse((T::ZERO, s)));
        while let Some(Reverse((du, u))) = heap.pop() {
            if dist[u].is_some_and(|x| x < du) {
                continue;
            }
            for &(v, wt) in &adj[u] {
                let cand = du.checked_add(wt).expect("guarded by overflow check");
                if dist[v].is_none_or(|x| cand < x) {
                    dist[v] = Some(cand);
                    heap.push(Reverse((cand, v)));
                }
            }
        }
        data.extend(dist.iter().map(|x| x.expect("component is strongly connected")));
    }
    let labels = keep.iter().map(|&v| w.label(v)).collect();
    DistanceMatrix::from_flat(n, data)?.with_labels(labels)
}

/// Metric closure of a complete distance table, keeping all vertices.
/// Used to repair raw matrices that violate the triangle inequality.
pub fn close_matrix<T: Distance>(d: &DistanceMatrix<T>) -> Result<DistanceMatrix<T>> {
    let mut zeroed = d.clone();
    for i in 0..d.n() {
        zeroed.set(i, i, T::ZERO);
    }
    let mut closed = metric_closure(&WeightedDigraph::from_matrix(&zeroed))?;
    // A complete digraph is strongly connected, so the vertex order is kept;
    // restore labels exactly as they were (including the absent case).
    closed.labels.clone_from(&d.labels);
    Ok(closed)
}
