//! Seeded random instances for verification batteries and experiments.
//!
//! All randomness comes from ChaCha8 seeded with a `u64`; sample `i` of a
//! battery uses stream `i` of that seed, so batteries can be generated in any
//! order and still match.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::RationalMatrix;
use crate::model::{EuclideanInstance, GraphInstance, MetricInstance};
use crate::rational::Rational;
use crate::reductions::{L0Instance, ReductionKind, SourceInstance, UflInstance};
use crate::utilities::SimilarityMatrix;

/// Edge probabilities for Erdős–Rényi graphs, one drawn per graph.
pub const EDGE_PROBABILITIES: [f64; 3] = [0.2, 0.5, 0.8];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for sample `index` of the battery seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index);
    r
}

/// `count` distinct indices from `0..n` in draw order (partial Fisher–Yates).
pub fn distinct_indices(rng: &mut impl Rng, n: usize, count: usize) -> Vec<usize> {
    assert!(count <= n, "cannot draw {count} distinct indices from {n}");
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..count {
        let j = rng.gen_range(i..n);
        pool.swap(i, j);
    }
    pool.truncate(count);
    pool
}

/// Erdős–Rényi graph with edge probability drawn from [`EDGE_PROBABILITIES`].
pub fn random_graph(rng: &mut impl Rng, n: usize) -> GraphInstance {
    let p = *EDGE_PROBABILITIES.choose(rng).expect("nonempty");
    random_graph_with(rng, n, p)
}

pub fn random_graph_with(rng: &mut impl Rng, n: usize, p: f64) -> GraphInstance {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    GraphInstance::new(n, edges).expect("edges are in range")
}

/// Points with coordinates `c / denom` for integers `c` in `-range..=range`.
pub fn random_points(rng: &mut impl Rng, n: usize, dim: usize, range: i64, denom: i64) -> EuclideanInstance {
    let points = (0..n)
        .map(|_| (0..dim).map(|_| Rational::ratio(rng.gen_range(-range..=range), denom)).collect())
        .collect();
    EuclideanInstance::new(points).expect("uniform dimension")
}

/// Shortest-path closure of a complete graph with integer weights in
/// `1..=max_weight`.
pub fn random_metric(rng: &mut impl Rng, n: usize, max_weight: i64) -> MetricInstance {
    let mut d = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let w = rng.gen_range(1..=max_weight);
            d[i][j] = w;
            d[j][i] = w;
        }
    }
    for via in 0..n {
        for i in 0..n {
            for j in 0..n {
                let through = d[i][via] + d[via][j];
                if through < d[i][j] {
                    d[i][j] = through;
                }
            }
        }
    }
    let rows: Vec<&[i64]> = d.iter().map(Vec::as_slice).collect();
    MetricInstance::from_i64_rows(&rows).expect("shortest paths form a metric")
}

/// Similarities `-d` or `-d²` for a random metric, so every point is at
/// least as similar to itself as to any other point.
pub fn random_similarity(rng: &mut impl Rng, n: usize, max_weight: i64) -> SimilarityMatrix {
    let m = random_metric(rng, n, max_weight);
    let squared = rng.gen_bool(0.5);
    let rows = (0..n)
        .map(|i| (0..n).map(|j| if squared { -m.d(i, j).square() } else { -m.d(i, j) }).collect())
        .collect();
    SimilarityMatrix::new(rows).expect("square")
}

pub fn random_ufl(rng: &mut impl Rng, facilities: usize, clients: usize, max_cost: i64) -> UflInstance {
    let opening = (0..facilities).map(|_| Rational::from(rng.gen_range(0..=max_cost))).collect();
    let service = (0..clients)
        .map(|_| (0..facilities).map(|_| Rational::from(rng.gen_range(0..=max_cost))).collect())
        .collect();
    UflInstance::new(opening, service).expect("nonempty and rectangular")
}

/// Sparse-solution instance with entries in `-range..=range` and a nonzero `b`.
pub fn random_l0(rng: &mut impl Rng, rows: usize, cols: usize, range: i64) -> L0Instance {
    let a: Vec<Vec<Rational>> =
        (0..rows).map(|_| (0..cols).map(|_| Rational::from(rng.gen_range(-range..=range))).collect()).collect();
    let mut b: Vec<Rational> = (0..rows).map(|_| Rational::from(rng.gen_range(-range..=range))).collect();
    if b.iter().all(Rational::is_zero) {
        let r = rng.gen_range(0..rows);
        b[r] = Rational::from(if rng.gen_bool(0.5) { 1i64 } else { -1 });
    }
    let t = rng.gen_range(0..=cols);
    L0Instance::new(RationalMatrix::from_rows(a).expect("rectangular"), b, t).expect("shapes match")
}

/// Random source instance of the given kind with at most `nmax` points
/// (floored at the smallest meaningful size).
pub fn sample_source(kind: ReductionKind, rng: &mut impl Rng, nmax: usize) -> SourceInstance {
    let nmax = nmax.max(2);
    match kind {
        ReductionKind::Coloring => {
            let n = rng.gen_range(2..=nmax);
            let colors = rng.gen_range(2..=4).min(n);
            SourceInstance::Coloring { graph: random_graph(rng, n), colors }
        }
        ReductionKind::Fdcs => {
            let n = rng.gen_range(2..=nmax);
            let size = rng.gen_range(1..n);
            let min_edges = rng.gen_range(0..=size * (size - 1) / 2);
            SourceInstance::Fdcs { graph: random_graph(rng, n), size, min_edges }
        }
        ReductionKind::Bisection => {
            let n = 2 * rng.gen_range(1..=nmax / 2);
            let graph = random_graph(rng, n);
            let budget = rng.gen_range(0..=graph.num_edges());
            SourceInstance::Bisection { graph, budget }
        }
        ReductionKind::CliqueCover => {
            let n = rng.gen_range(2..=nmax);
            let cliques = rng.gen_range(1..=n);
            SourceInstance::CliqueCover { graph: random_graph(rng, n), cliques }
        }
        ReductionKind::KmeansBirch => {
            let n = rng.gen_range(1..=nmax);
            let dim = rng.gen_range(1..=3);
            let k = rng.gen_range(1..=n);
            let points = random_points(rng, n, dim, 4, 2);
            let budget = Rational::ratio(rng.gen_range(0..=40), 2);
            SourceInstance::Kmeans { points, k, budget }
        }
        ReductionKind::UflAp => {
            let facilities = rng.gen_range(1..=3);
            let clients = rng.gen_range(1..=3);
            let ufl = random_ufl(rng, facilities, clients, 4);
            let budget = Rational::from(rng.gen_range(0..=12i64));
            SourceInstance::Ufl { ufl, budget }
        }
        ReductionKind::L0Ssc => {
            let rows = rng.gen_range(1..=3);
            let cols = rng.gen_range(1..=3);
            SourceInstance::L0(random_l0(rng, rows, cols, 2))
        }
        ReductionKind::Kmedian => {
            let n = rng.gen_range(1..=nmax);
            let k = rng.gen_range(1..=n);
            let metric = random_metric(rng, n, 5);
            let budget = Rational::from(rng.gen_range(0..=(3 * n as i64)));
            SourceInstance::Kmedian { metric, k, budget }
        }
    }
}
