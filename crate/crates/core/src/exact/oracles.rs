//! Exhaustive solvers and certificate checkers for the source problems. They
//! share nothing with the UCP evaluators, so agreement between the two sides
//! is meaningful.

use super::combinations;
use crate::linalg::solve;
use crate::model::{EuclideanInstance, GraphInstance, MetricInstance};
use crate::partition::Partition;
use crate::rational::Rational;
use crate::reductions::{L0Instance, SourceCertificate, SourceInstance, UflInstance};
use crate::utilities::SimilarityMatrix;

/// Largest graph the graph oracles accept.
pub const GRAPH_CAP: usize = 12;
/// Largest point set for the clustering oracles.
pub const POINT_CAP: usize = 12;
/// Largest facility or client count for the facility-location oracle.
pub const UFL_CAP: usize = 10;
/// Largest column count for the sparse-solution oracle.
pub const L0_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{what} of size {size} exceeds the exhaustive-search cap {cap}")]
    InstanceTooLarge { what: &'static str, size: usize, cap: usize },
    #[error("k={k} is outside 1..={n}")]
    InvalidK { k: usize, n: usize },
}

fn cap(what: &'static str, size: usize, cap: usize) -> Result<(), OracleError> {
    if size > cap {
        return Err(OracleError::InstanceTooLarge { what, size, cap });
    }
    Ok(())
}

fn check_k(k: usize, n: usize) -> Result<(), OracleError> {
    if k == 0 || k > n {
        return Err(OracleError::InvalidK { k, n });
    }
    Ok(())
}

/// Answer of a source decision problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SourceAnswer {
    Yes(SourceCertificate),
    No,
}

impl SourceAnswer {
    pub fn is_yes(&self) -> bool {
        matches!(self, SourceAnswer::Yes(_))
    }
}

/// A proper coloring with colors `0..kappa`, found by backtracking.
pub fn coloring(g: &GraphInstance, kappa: usize) -> Result<Option<Vec<usize>>, OracleError> {
    cap("graph", g.n(), GRAPH_CAP)?;
    check_k(kappa, g.n())?;
    fn extend(g: &GraphInstance, kappa: usize, colors: &mut Vec<usize>) -> bool {
        let v = colors.len();
        if v == g.n() {
            return true;
        }
        // symmetry breaking: vertex v may open at most one new color
        let used = colors.iter().max().map_or(0, |&c| c + 1);
        for c in 0..kappa.min(used + 1) {
            if (0..v).all(|u| !(colors[u] == c && g.has_edge(u, v))) {
                colors.push(c);
                if extend(g, kappa, colors) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    let mut colors = Vec::with_capacity(g.n());
    Ok(extend(g, kappa, &mut colors).then_some(colors))
}

/// A connected vertex set of size `size` inducing at least `min_edges` edges.
pub fn fdcs(g: &GraphInstance, size: usize, min_edges: usize) -> Result<Option<Vec<usize>>, OracleError> {
    cap("graph", g.n(), GRAPH_CAP)?;
    if size == 0 || size > g.n() {
        return Ok(None);
    }
    Ok(combinations(g.n(), size)
        .into_iter()
        .find(|s| g.induced_edges(s) >= min_edges && g.is_connected_subset(s)))
}

fn cut_size(g: &GraphInstance, side: &[usize]) -> usize {
    let mut in_side = vec![false; g.n()];
    for &v in side {
        in_side[v] = true;
    }
    g.edges().filter(|&(u, v)| in_side[u] != in_side[v]).count()
}

/// Minimum number of cut edges over balanced bisections, with the side
/// containing vertex 0 that attains it. Requires even `n`.
pub fn min_bisection(g: &GraphInstance) -> Result<Option<(usize, Vec<usize>)>, OracleError> {
    cap("graph", g.n(), GRAPH_CAP)?;
    let n = g.n();
    if n == 0 || n % 2 != 0 {
        return Ok(None);
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    for rest in combinations(n - 1, n / 2 - 1) {
        let side: Vec<usize> = std::iter::once(0).chain(rest.into_iter().map(|v| v + 1)).collect();
        let cut = cut_size(g, &side);
        if best.as_ref().map_or(true, |(c, _)| cut < *c) {
            best = Some((cut, side));
        }
    }
    Ok(best)
}

/// Partition of the vertices into at most `k` cliques, via colorings of the
/// complement graph.
pub fn clique_cover(g: &GraphInstance, k: usize) -> Result<Option<Vec<Vec<usize>>>, OracleError> {
    let Some(colors) = coloring(&g.complement(), k)? else {
        return Ok(None);
    };
    let classes = colors.iter().max().map_or(0, |&c| c + 1);
    let mut cliques = vec![Vec::new(); classes];
    for (v, &c) in colors.iter().enumerate() {
        cliques[c].push(v);
    }
    Ok(Some(cliques))
}

/// Calls `visit` with every assignment of `n` points to exactly `k`
/// interchangeable blocks, built point by point.
fn for_each_grouping(n: usize, k: usize, visit: &mut dyn FnMut(&[usize])) {
    fn go(n: usize, k: usize, labels: &mut Vec<usize>, opened: usize, visit: &mut dyn FnMut(&[usize])) {
        if labels.len() == n {
            if opened == k {
                visit(labels);
            }
            return;
        }
        // too few points left to open the missing blocks
        if k - opened > n - labels.len() {
            return;
        }
        for b in 0..opened.min(k) {
            labels.push(b);
            go(n, k, labels, opened, visit);
            labels.pop();
        }
        if opened < k {
            labels.push(opened);
            go(n, k, labels, opened + 1, visit);
            labels.pop();
        }
    }
    go(n, k, &mut Vec::with_capacity(n), 0, visit);
}

/// Sum of squared distances to the block centroids, from explicit centroids.
pub fn centroid_cost(points: &EuclideanInstance, labels: &[usize], k: usize) -> Rational {
    let dim = points.dim();
    let mut sums = vec![vec![Rational::zero(); dim]; k];
    let mut counts = vec![0i64; k];
    for (i, &b) in labels.iter().enumerate() {
        counts[b] += 1;
        for (acc, x) in sums[b].iter_mut().zip(points.point(i)) {
            *acc += x;
        }
    }
    let centroids: Vec<Vec<Rational>> = sums
        .into_iter()
        .zip(&counts)
        .map(|(sum, &c)| {
            let inv = Rational::ratio(1, c.max(1));
            sum.into_iter().map(|s| s * &inv).collect()
        })
        .collect();
    labels
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            points
                .point(i)
                .iter()
                .zip(&centroids[b])
                .map(|(x, c)| (x - c).square())
                .sum::<Rational>()
        })
        .sum()
}

/// Minimum k-means cost over clusterings into exactly `k` nonempty clusters.
pub fn kmeans_optimum(points: &EuclideanInstance, k: usize) -> Result<(Rational, Partition), OracleError> {
    cap("point set", points.n(), POINT_CAP)?;
    check_k(k, points.n())?;
    let mut best: Option<(Rational, Vec<usize>)> = None;
    for_each_grouping(points.n(), k, &mut |labels| {
        let cost = centroid_cost(points, labels, k);
        if best.as_ref().map_or(true, |(c, _)| cost < *c) {
            best = Some((cost, labels.to_vec()));
        }
    });
    let (cost, labels) = best.expect("k <= n admits a clustering");
    Ok((cost, Partition::from_labels(&labels, k).expect("groupings use every label")))
}

/// Sum over points of the distance to the nearest medoid.
pub fn kmedian_cost(metric: &MetricInstance, medoids: &[usize]) -> Rational {
    (0..metric.n())
        .map(|i| medoids.iter().map(|&c| metric.d(i, c)).min().expect("at least one medoid").clone())
        .sum()
}

/// Minimum k-median cost over medoid sets of size `k`, with the first optimal
/// set in lexicographic order.
pub fn kmedian_optimum(metric: &MetricInstance, k: usize) -> Result<(Rational, Vec<usize>), OracleError> {
    cap("point set", metric.n(), POINT_CAP)?;
    check_k(k, metric.n())?;
    let mut best: Option<(Rational, Vec<usize>)> = None;
    for medoids in combinations(metric.n(), k) {
        let cost = kmedian_cost(metric, &medoids);
        if best.as_ref().map_or(true, |(c, _)| cost < *c) {
            best = Some((cost, medoids));
        }
    }
    Ok(best.expect("k <= n"))
}

/// Minimum facility-location cost over nonempty open sets.
pub fn ufl_optimum(ufl: &UflInstance) -> Result<(Rational, Vec<usize>), OracleError> {
    cap("facility set", ufl.num_facilities(), UFL_CAP)?;
    cap("client set", ufl.num_clients(), UFL_CAP)?;
    let nf = ufl.num_facilities();
    let mut best: Option<(Rational, Vec<usize>)> = None;
    for mask in 1u32..(1 << nf) {
        let open: Vec<usize> = (0..nf).filter(|&j| mask >> j & 1 == 1).collect();
        let cost = ufl.cost(&open);
        if best.as_ref().map_or(true, |(c, _)| cost < *c) {
            best = Some((cost, open));
        }
    }
    Ok(best.expect("at least one facility"))
}

/// A solution of `Az = b` with at most `t` nonzeros, trying supports by size.
pub fn l0_solve(l0: &L0Instance) -> Result<Option<Vec<Rational>>, OracleError> {
    let cols = l0.a().cols();
    cap("column count", cols, L0_CAP)?;
    for size in 0..=l0.t().min(cols) {
        for support in combinations(cols, size) {
            let coeffs = if size == 0 {
                l0.b().iter().all(Rational::is_zero).then(Vec::new)
            } else {
                solve(&l0.a().select_columns(&support), l0.b())
            };
            if let Some(coeffs) = coeffs {
                let mut z = vec![Rational::zero(); cols];
                for (&c, v) in support.iter().zip(coeffs) {
                    z[c] = v;
                }
                return Ok(Some(z));
            }
        }
    }
    Ok(None)
}

/// `Σ_{e∈E} s(e,e) + Σ_{i∉E} max_{e∈E} s(i,e)`: the best consistent
/// assignment onto exemplar set `E`.
pub fn exemplar_objective(s: &SimilarityMatrix, exemplars: &[usize]) -> Rational {
    let mut is_exemplar = vec![false; s.n()];
    for &e in exemplars {
        is_exemplar[e] = true;
    }
    (0..s.n())
        .map(|i| {
            if is_exemplar[i] {
                s.s(i, i).clone()
            } else {
                exemplars.iter().map(|&e| s.s(i, e)).max().expect("nonempty exemplar set").clone()
            }
        })
        .sum()
}

/// Maximum of [`exemplar_objective`] over exemplar sets of size exactly `k`.
pub fn exemplar_optimum(s: &SimilarityMatrix, k: usize) -> Result<(Rational, Vec<usize>), OracleError> {
    cap("point set", s.n(), POINT_CAP)?;
    check_k(k, s.n())?;
    let mut best: Option<(Rational, Vec<usize>)> = None;
    for exemplars in combinations(s.n(), k) {
        let value = exemplar_objective(s, &exemplars);
        if best.as_ref().map_or(true, |(v, _)| value > *v) {
            best = Some((value, exemplars));
        }
    }
    Ok(best.expect("k <= n"))
}

/// Largest point count accepted by [`ap_optimum`].
pub const AP_CAP: usize = 20;

/// Maximum affinity-propagation objective over all consistent assignments
/// (any number of exemplars), with the first optimal exemplar set by bitmask.
/// Integer matrices take an `i64` route; both routes are exhaustive.
pub fn ap_optimum(s: &SimilarityMatrix) -> Result<(Rational, Vec<usize>), OracleError> {
    cap("point set", s.n(), AP_CAP)?;
    match integer_similarities(s) {
        Some(table) => {
            let (value, mask) = ap_optimum_i64(&table);
            Ok((Rational::from(value), mask_members(mask, s.n())))
        }
        None => Ok(ap_optimum_rational(s)),
    }
}

fn mask_members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&j| mask >> j & 1 == 1).collect()
}

fn integer_similarities(s: &SimilarityMatrix) -> Option<Vec<Vec<i64>>> {
    // bound keeps every sum of n entries inside i64
    const LIMIT: i64 = 1 << 40;
    (0..s.n())
        .map(|i| {
            (0..s.n())
                .map(|j| {
                    let v = s.s(i, j);
                    if !v.is_integer() {
                        return None;
                    }
                    i64::try_from(v.numer()).ok().filter(|x| x.abs() < LIMIT)
                })
                .collect()
        })
        .collect()
}

/// Exact optimum using rational arithmetic throughout.
pub fn ap_optimum_rational(s: &SimilarityMatrix) -> (Rational, Vec<usize>) {
    let n = s.n();
    let mut best: Option<(Rational, Vec<usize>)> = None;
    for mask in 1u32..(1 << n) {
        let exemplars = mask_members(mask, n);
        let value = exemplar_objective(s, &exemplars);
        if best.as_ref().map_or(true, |(v, _)| value > *v) {
            best = Some((value, exemplars));
        }
    }
    best.expect("n >= 1")
}

/// Integer route: each point's best exemplar within a mask is built up from
/// the mask without its highest member.
pub fn ap_optimum_i64(s: &[Vec<i64>]) -> (i64, u32) {
    let n = s.len();
    assert!((1..=AP_CAP).contains(&n), "point count outside 1..={AP_CAP}");
    let full = 1usize << n;
    // best[mask * n + i] = max_{e in mask} s(i, e)
    let mut best = vec![i64::MIN; full * n];
    let mut top = (i64::MIN, 0u32);
    for mask in 1..full {
        let high = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
        let rest = mask & !(1 << high);
        let mut value = 0i64;
        for i in 0..n {
            let via_high = s[i][high];
            let b = if rest == 0 { via_high } else { best[rest * n + i].max(via_high) };
            best[mask * n + i] = b;
            value += if mask >> i & 1 == 1 { s[i][i] } else { b };
        }
        if value > top.0 {
            top = (value, mask as u32);
        }
    }
    top
}

fn verify_coloring(g: &GraphInstance, kappa: usize, colors: &[usize]) -> bool {
    colors.len() == g.n() && colors.iter().all(|&c| c < kappa) && g.edges().all(|(u, v)| colors[u] != colors[v])
}

fn distinct_in_range(items: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    items.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

/// Checks a source certificate against the source instance directly.
pub fn verify_source_certificate(source: &SourceInstance, cert: &SourceCertificate) -> bool {
    match (source, cert) {
        (SourceInstance::Coloring { graph, colors }, SourceCertificate::Coloring(c)) => {
            verify_coloring(graph, *colors, c)
        }
        (SourceInstance::Fdcs { graph, size, min_edges }, SourceCertificate::Subgraph(s)) => {
            s.len() == *size
                && distinct_in_range(s, graph.n())
                && graph.is_connected_subset(s)
                && graph.induced_edges(s) >= *min_edges
        }
        (SourceInstance::Bisection { graph, budget }, SourceCertificate::Bisection(side)) => {
            2 * side.len() == graph.n() && distinct_in_range(side, graph.n()) && cut_size(graph, side) <= *budget
        }
        (SourceInstance::CliqueCover { graph, cliques }, SourceCertificate::Cliques(cs)) => {
            let flat: Vec<usize> = cs.iter().flatten().copied().collect();
            cs.len() <= *cliques
                && cs.iter().all(|c| !c.is_empty())
                && flat.len() == graph.n()
                && distinct_in_range(&flat, graph.n())
                && cs.iter().all(|c| c.iter().enumerate().all(|(a, &u)| c[a + 1..].iter().all(|&v| graph.has_edge(u, v))))
        }
        (SourceInstance::Kmeans { points, k, budget }, SourceCertificate::Clustering(p)) => {
            p.n() == points.n() && p.k() == *k && centroid_cost(points, p.labels(), p.k()) <= *budget
        }
        (SourceInstance::Kmedian { metric, k, budget }, SourceCertificate::Medoids(m)) => {
            !m.is_empty() && m.len() <= *k && distinct_in_range(m, metric.n()) && kmedian_cost(metric, m) <= *budget
        }
        (SourceInstance::Ufl { ufl, budget }, SourceCertificate::OpenFacilities(open)) => {
            !open.is_empty() && distinct_in_range(open, ufl.num_facilities()) && ufl.cost(open) <= *budget
        }
        (SourceInstance::L0(l0), SourceCertificate::Solution(z)) => {
            z.len() == l0.a().cols()
                && z.iter().filter(|v| !v.is_zero()).count() <= l0.t()
                && l0.a().mul_vec(z).is_ok_and(|az| az == l0.b())
        }
        _ => false,
    }
}

/// Decides a source instance by exhaustive search.
pub fn source_decide(source: &SourceInstance) -> Result<SourceAnswer, OracleError> {
    let answer = |cert: Option<SourceCertificate>| cert.map_or(SourceAnswer::No, SourceAnswer::Yes);
    Ok(match source {
        SourceInstance::Coloring { graph, colors } => answer(coloring(graph, *colors)?.map(SourceCertificate::Coloring)),
        SourceInstance::Fdcs { graph, size, min_edges } => {
            answer(fdcs(graph, *size, *min_edges)?.map(SourceCertificate::Subgraph))
        }
        SourceInstance::Bisection { graph, budget } => answer(
            min_bisection(graph)?.filter(|(cut, _)| cut <= budget).map(|(_, side)| SourceCertificate::Bisection(side)),
        ),
        SourceInstance::CliqueCover { graph, cliques } => {
            answer(clique_cover(graph, *cliques)?.map(SourceCertificate::Cliques))
        }
        SourceInstance::Kmeans { points, k, budget } => {
            let (cost, p) = kmeans_optimum(points, *k)?;
            answer((cost <= *budget).then_some(SourceCertificate::Clustering(p)))
        }
        SourceInstance::Ufl { ufl, budget } => {
            let (cost, open) = ufl_optimum(ufl)?;
            answer((cost <= *budget).then_some(SourceCertificate::OpenFacilities(open)))
        }
        SourceInstance::L0(l0) => answer(l0_solve(l0)?.map(SourceCertificate::Solution)),
        SourceInstance::Kmedian { metric, k, budget } => {
            let (cost, medoids) = kmedian_optimum(metric, *k)?;
            answer((cost <= *budget).then_some(SourceCertificate::Medoids(medoids)))
        }
    })
}
