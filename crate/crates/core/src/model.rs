//! Graphs, finite metrics and Euclidean point sets.
//!
//! Points and vertices are 0-based in memory. Error messages and text formats
//! use 1-based indices.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("distance matrix is not square: row {row} has {found} entries, expected {expected}")]
    NotSquare { row: usize, found: usize, expected: usize },
    #[error("asymmetric distances: d({},{}) != d({},{})", .i + 1, .j + 1, .j + 1, .i + 1)]
    Asymmetry { i: usize, j: usize },
    #[error("{}", zero_diagonal_message(*.i, *.j))]
    ZeroDiagonal { i: usize, j: usize },
    #[error("triangle inequality fails: d({},{}) > d({},{}) + d({},{})", .i + 1, .l + 1, .i + 1, .j + 1, .j + 1, .l + 1)]
    Triangle { i: usize, j: usize, l: usize },
    #[error("edge ({},{}) is a self-loop", .0 + 1, .0 + 1)]
    SelfLoop(usize),
    #[error("edge ({},{}) references a vertex outside 1..={n}", .u + 1, .v + 1)]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("point {point} has dimension {found}, expected {expected}")]
    DimensionMismatch { point: usize, found: usize, expected: usize },
    #[error("instance has no points")]
    Empty,
}

fn zero_diagonal_message(i: usize, j: usize) -> String {
    if i == j {
        format!("d({},{}) must be zero", i + 1, i + 1)
    } else {
        format!("d({},{}) must be positive for distinct points", i + 1, j + 1)
    }
}

/// Simple undirected graph on vertices `0..n`. Edges are stored as `(u, v)`
/// with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct GraphInstance {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

#[derive(Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<RawGraph> for GraphInstance {
    type Error = ModelError;

    fn try_from(raw: RawGraph) -> Result<Self, Self::Error> {
        GraphInstance::new(raw.n, raw.edges)
    }
}

impl GraphInstance {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, ModelError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(ModelError::SelfLoop(u));
            }
            if u >= n || v >= n {
                return Err(ModelError::VertexOutOfRange { u, v, n });
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(GraphInstance { n, edges: set })
    }

    pub fn empty(n: usize) -> Self {
        GraphInstance { n, edges: BTreeSet::new() }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
        GraphInstance { n, edges }
    }

    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|v| (v - 1, v)).collect();
        GraphInstance { n, edges }
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 3 {
            g.edges.insert((0, n - 1));
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Dense adjacency matrix, row-major.
    pub fn adjacency(&self) -> Vec<bool> {
        let mut adj = vec![false; self.n * self.n];
        for &(u, v) in &self.edges {
            adj[u * self.n + v] = true;
            adj[v * self.n + u] = true;
        }
        adj
    }

    pub fn complement(&self) -> GraphInstance {
        let edges = (0..self.n)
            .flat_map(|u| ((u + 1)..self.n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v))
            .collect();
        GraphInstance { n: self.n, edges }
    }

    /// Number of edges with both endpoints in `vertices`.
    pub fn induced_edges(&self, vertices: &[usize]) -> usize {
        let mut count = 0;
        for (a, &u) in vertices.iter().enumerate() {
            for &v in &vertices[a + 1..] {
                if self.has_edge(u, v) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Whether the subgraph induced by `vertices` is connected. The empty set
    /// counts as disconnected.
    pub fn is_connected_subset(&self, vertices: &[usize]) -> bool {
        let Some(&start) = vertices.first() else {
            return false;
        };
        let mut seen = vec![start];
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in vertices {
                if !seen.contains(&v) && self.has_edge(u, v) {
                    seen.push(v);
                    stack.push(v);
                }
            }
        }
        seen.len() == vertices.len()
    }
}

/// `n` points with an exact-rational metric, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MetricInstance {
    n: usize,
    d: Vec<Rational>,
}

impl MetricInstance {
    /// Validates the metric axioms and reports the first violation found.
    /// Checks run in the order: diagonal, symmetry and positivity per pair,
    /// then triangles `(i, j, l)` in lexicographic order.
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self, ModelError> {
        let n = rows.len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(ModelError::NotSquare { row, found: r.len(), expected: n });
            }
        }
        let d: Vec<Rational> = rows.into_iter().flatten().collect();
        let at = |i: usize, j: usize| &d[i * n + j];
        for i in 0..n {
            if !at(i, i).is_zero() {
                return Err(ModelError::ZeroDiagonal { i, j: i });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if at(i, j) != at(j, i) {
                    return Err(ModelError::Asymmetry { i, j });
                }
                if !at(i, j).is_positive() {
                    return Err(ModelError::ZeroDiagonal { i, j });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    if at(i, l) > &(at(i, j) + at(j, l)) {
                        return Err(ModelError::Triangle { i, j, l });
                    }
                }
            }
        }
        Ok(MetricInstance { n, d })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, ModelError> {
        Self::new(rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(v)).collect()).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self, i: usize, j: usize) -> &Rational {
        &self.d[i * self.n + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        self.d.chunks(self.n.max(1)).take(self.n).map(<[Rational]>::to_vec).collect()
    }

    pub fn max_distance(&self) -> Rational {
        self.d.iter().cloned().max().unwrap_or_default()
    }

    /// Distinct positive distances in increasing order.
    pub fn positive_distances(&self) -> Vec<Rational> {
        let set: BTreeSet<&Rational> = self.d.iter().filter(|v| v.is_positive()).collect();
        set.into_iter().cloned().collect()
    }

    /// Restriction to the listed points, in the listed order.
    pub fn restrict(&self, points: &[usize]) -> MetricInstance {
        let d = points.iter().flat_map(|&i| points.iter().map(move |&j| (i, j))).map(|(i, j)| self.d(i, j).clone()).collect();
        MetricInstance { n: points.len(), d }
    }
}

impl Serialize for MetricInstance {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MetricInstance {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Rational>>::deserialize(deserializer)?;
        MetricInstance::new(rows).map_err(serde::de::Error::custom)
    }
}

/// Graph metric: 0 on the diagonal, 1 on edges, 2 on non-edges.
pub fn graph_metric(g: &GraphInstance) -> MetricInstance {
    let n = g.n();
    let (one, two) = (Rational::one(), Rational::from_integer(2));
    let mut d = vec![Rational::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                d[i * n + j] = if g.has_edge(i, j) { one.clone() } else { two.clone() };
            }
        }
    }
    MetricInstance { n, d }
}

/// Graph joining every pair at distance at most `eps` (inclusive).
pub fn eps_graph(m: &MetricInstance, eps: &Rational) -> GraphInstance {
    let n = m.n();
    let edges = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .filter(|&(i, j)| m.d(i, j) <= eps)
        .collect();
    GraphInstance { n, edges }
}

/// `n` points in `p` dimensions with rational coordinates. Stored point-major:
/// `coords[i]` is the coordinate vector of point `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EuclideanInstance {
    dim: usize,
    coords: Vec<Vec<Rational>>,
}

impl EuclideanInstance {
    pub fn new(points: Vec<Vec<Rational>>) -> Result<Self, ModelError> {
        let dim = points.first().map(Vec::len).ok_or(ModelError::Empty)?;
        for (point, x) in points.iter().enumerate() {
            if x.len() != dim {
                return Err(ModelError::DimensionMismatch { point, found: x.len(), expected: dim });
            }
        }
        Ok(EuclideanInstance { dim, coords: points })
    }

    /// One-dimensional instance from integer coordinates.
    pub fn from_line(xs: &[i64]) -> Self {
        EuclideanInstance { dim: 1, coords: xs.iter().map(|&x| vec![Rational::from_integer(x)]).collect() }
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[Rational] {
        &self.coords[i]
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.coords
    }

    pub fn squared_distance(&self, i: usize, j: usize) -> Rational {
        self.coords[i].iter().zip(&self.coords[j]).map(|(a, b)| (a - b).square()).sum()
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.coords.iter().map(|x| x.iter().map(Rational::to_f64).collect()).collect()
    }
}

impl Serialize for EuclideanInstance {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coords.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for EuclideanInstance {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let points = Vec::<Vec<Rational>>::deserialize(deserializer)?;
        EuclideanInstance::new(points).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for GraphInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph(n={}, edges=[", self.n)?;
        for (idx, (u, v)) in self.edges().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}-{}", u + 1, v + 1)?;
        }
        f.write_str("])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn triangle_violation_reports_triple() {
        let err = MetricInstance::from_i64_rows(&[&[0, 1, 5], &[1, 0, 1], &[5, 1, 0]]).unwrap_err();
        assert_eq!(err, ModelError::Triangle { i: 0, j: 1, l: 2 });
        assert_eq!(err.to_string(), "triangle inequality fails: d(1,3) > d(1,2) + d(2,3)");
    }

    #[test]
    fn axiom_errors() {
        assert!(matches!(
            MetricInstance::from_i64_rows(&[&[0, 1], &[2, 0]]),
            Err(ModelError::Asymmetry { i: 0, j: 1 })
        ));
        assert!(matches!(
            MetricInstance::from_i64_rows(&[&[1, 1], &[1, 0]]),
            Err(ModelError::ZeroDiagonal { i: 0, j: 0 })
        ));
        assert!(matches!(
            MetricInstance::from_i64_rows(&[&[0, 0], &[0, 0]]),
            Err(ModelError::ZeroDiagonal { i: 0, j: 1 })
        ));
        assert!(matches!(
            MetricInstance::new(vec![vec![Rational::zero()], vec![]]),
            Err(ModelError::NotSquare { .. })
        ));
    }

    #[test]
    fn graph_metric_examples() {
        let k3 = graph_metric(&GraphInstance::complete(3));
        assert!((0..3).all(|i| (0..3).all(|j| *k3.d(i, j) == if i == j { 0 } else { 1 })));
        let empty = graph_metric(&GraphInstance::empty(3));
        assert_eq!(*empty.d(0, 2), 2);
        let path = graph_metric(&GraphInstance::path(3));
        assert_eq!((path.d(0, 1).clone(), path.d(1, 2).clone(), path.d(0, 2).clone()), (1.into(), 1.into(), 2.into()));
    }

    #[test]
    fn eps_graph_extremes() {
        let m = MetricInstance::from_i64_rows(&[&[0, 2, 3], &[2, 0, 4], &[3, 4, 0]]).unwrap();
        assert_eq!(eps_graph(&m, &Rational::from_integer(4)), GraphInstance::complete(3));
        assert_eq!(eps_graph(&m, &Rational::ratio(3, 2)), GraphInstance::empty(3));
        assert_eq!(eps_graph(&m, &Rational::from_integer(2)).num_edges(), 1);
    }

    #[test]
    fn graph_rejects_self_loops_and_bad_vertices() {
        assert_eq!(GraphInstance::new(3, [(1, 1)]), Err(ModelError::SelfLoop(1)));
        assert!(matches!(GraphInstance::new(3, [(0, 3)]), Err(ModelError::VertexOutOfRange { .. })));
    }

    fn arb_graph() -> impl Strategy<Value = GraphInstance> {
        (1usize..9).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let pairs = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v)));
                GraphInstance::new(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn graph_metric_is_a_metric_and_recovers_graph(g in arb_graph()) {
            let m = graph_metric(&g);
            prop_assert!(MetricInstance::new(m.to_rows()).is_ok());
            prop_assert!(m.to_rows().iter().flatten().all(|v| *v == 0 || *v == 1 || *v == 2));
            prop_assert_eq!(eps_graph(&m, &Rational::one()), g);
        }
    }
}
