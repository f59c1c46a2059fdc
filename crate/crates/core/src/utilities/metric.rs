//! Utilities over an explicit metric: conflicts, medoids, density, cut,
//! diameter.

use super::{penalty_square, UtilityError};
use crate::model::{eps_graph, GraphInstance, MetricInstance};
use crate::partition::{blocks_of, Partition};
use crate::rational::Rational;

/// Dense adjacency of a threshold graph, cached for repeated evaluation.
#[derive(Debug, Clone)]
pub(crate) struct UnitAdjacency {
    n: usize,
    adj: Vec<bool>,
}

impl UnitAdjacency {
    pub(crate) fn from_graph(g: &GraphInstance) -> Self {
        UnitAdjacency { n: g.n(), adj: g.adjacency() }
    }

    /// Pairs at distance exactly one.
    pub(crate) fn unit_pairs(m: &MetricInstance) -> Self {
        let n = m.n();
        let adj = (0..n * n).map(|idx| *m.d(idx / n, idx % n) == 1).collect();
        UnitAdjacency { n, adj }
    }

    pub(crate) fn within(m: &MetricInstance, eps: &Rational) -> Self {
        Self::from_graph(&eps_graph(m, eps))
    }

    #[inline]
    fn has(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    fn induced_edges(&self, block: &[usize]) -> usize {
        let mut count = 0;
        for (a, &u) in block.iter().enumerate() {
            count += block[a + 1..].iter().filter(|&&v| self.has(u, v)).count();
        }
        count
    }

    fn connected(&self, block: &[usize]) -> bool {
        let Some(&start) = block.first() else {
            return false;
        };
        let mut seen = vec![false; block.len()];
        seen[0] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for (idx, &v) in block.iter().enumerate() {
                if !seen[idx] && self.has(u, v) {
                    seen[idx] = true;
                    reached += 1;
                    stack.push(v);
                }
            }
        }
        reached == block.len()
    }

    fn degree(&self, u: usize) -> usize {
        (0..self.n).filter(|&v| self.has(u, v)).count()
    }
}

fn check(m_n: usize, p: &Partition) -> Result<(), UtilityError> {
    p.check_size(m_n)?;
    Ok(())
}

fn check_two_blocks(p: &Partition) -> Result<(), UtilityError> {
    if p.k() != 2 {
        return Err(UtilityError::WrongK { expected: 2, found: p.k() });
    }
    Ok(())
}

pub(crate) fn conf_score(unit: &UnitAdjacency, labels: &[usize]) -> Rational {
    let mut conflicts = 0usize;
    for i in 0..labels.len() {
        for j in (i + 1)..labels.len() {
            if labels[i] == labels[j] && unit.has(i, j) {
                conflicts += 1;
            }
        }
    }
    -Rational::from(conflicts)
}

/// Minus the number of same-block pairs at distance exactly one.
pub fn u_conf(m: &MetricInstance, p: &Partition) -> Result<Rational, UtilityError> {
    check(m.n(), p)?;
    Ok(conf_score(&UnitAdjacency::unit_pairs(m), p.labels()))
}

pub(crate) fn med_score(m: &MetricInstance, labels: &[usize], k: usize) -> Rational {
    let mut total = Rational::zero();
    for block in blocks_of(labels, k) {
        let best = block
            .iter()
            .map(|&c| block.iter().map(|&i| m.d(i, c)).sum::<Rational>())
            .min()
            .expect("blocks are nonempty");
        total += best;
    }
    -total
}

/// Minus the total distance of every point to its block's best medoid.
pub fn u_med(m: &MetricInstance, p: &Partition) -> Result<Rational, UtilityError> {
    check(m.n(), p)?;
    Ok(med_score(m, p.labels(), p.k()))
}

/// Scores a two-block partition: `size` if either block has exactly `size`
/// points, induces a connected subgraph and has average degree at least
/// `delta`; `-n²` otherwise.
pub(crate) fn dens_score(adj: &UnitAdjacency, labels: &[usize], size: usize, delta: &Rational) -> Rational {
    let n = labels.len();
    for designated in 0..2 {
        let block: Vec<usize> = (0..n).filter(|&i| labels[i] == designated).collect();
        if block.len() != size || !adj.connected(&block) {
            continue;
        }
        let twice_edges = Rational::from(2 * adj.induced_edges(&block));
        if twice_edges >= delta * Rational::from(block.len()) {
            return Rational::from(size);
        }
    }
    penalty_square(n)
}

/// Density utility on the `eps`-neighbourhood graph. A set partition has no
/// designated block, so both blocks are tried and the better score is kept.
pub fn u_dens(
    m: &MetricInstance,
    p: &Partition,
    eps: &Rational,
    size: usize,
    delta: &Rational,
) -> Result<Rational, UtilityError> {
    check(m.n(), p)?;
    check_two_blocks(p)?;
    Ok(dens_score(&UnitAdjacency::within(m, eps), p.labels(), size, delta))
}

/// Scales tried by [`u_opt`]: positive distances up to `eps_max`, plus
/// `eps_max` itself, in increasing order.
pub fn opt_candidate_scales(m: &MetricInstance, eps_max: &Rational) -> Vec<Rational> {
    let mut scales: Vec<Rational> = m.positive_distances().into_iter().filter(|d| d <= eps_max).collect();
    if scales.last() != Some(eps_max) {
        scales.push(eps_max.clone());
    }
    scales
}

/// Best density score over all candidate scales up to `eps_max`, with the
/// density threshold fixed at `2 * min_edges / size`.
pub fn u_opt(
    m: &MetricInstance,
    p: &Partition,
    eps_max: &Rational,
    size: usize,
    min_edges: usize,
) -> Result<Rational, UtilityError> {
    check(m.n(), p)?;
    check_two_blocks(p)?;
    if !eps_max.is_positive() || size == 0 {
        return Err(UtilityError::InvalidParameter("eps_max must be positive and size at least 1".into()));
    }
    let delta = Rational::ratio(2 * min_edges as i64, size as i64);
    Ok(opt_candidate_scales(m, eps_max)
        .iter()
        .map(|eps| dens_score(&UnitAdjacency::within(m, eps), p.labels(), size, &delta))
        .max()
        .expect("at least one scale"))
}

pub(crate) fn bis_score(adj: &UnitAdjacency, labels: &[usize]) -> Rational {
    let n = labels.len();
    let left = labels.iter().filter(|&&l| l == 0).count();
    if n % 2 != 0 || left * 2 != n {
        return penalty_square(n);
    }
    let mut cut = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            if labels[i] != labels[j] && adj.has(i, j) {
                cut += 1;
            }
        }
    }
    -Rational::from(cut)
}

/// Minus the cut size of a balanced bisection of the `eps`-graph; `-n²` for
/// unbalanced partitions.
pub fn u_bis(m: &MetricInstance, p: &Partition, eps: &Rational) -> Result<Rational, UtilityError> {
    check(m.n(), p)?;
    check_two_blocks(p)?;
    Ok(bis_score(&UnitAdjacency::within(m, eps), p.labels()))
}

/// Normalized cut of a two-block partition of the `eps`-graph.
pub fn ncut(m: &MetricInstance, p: &Partition, eps: &Rational) -> Result<Rational, UtilityError> {
    check(m.n(), p)?;
    check_two_blocks(p)?;
    let adj = UnitAdjacency::within(m, eps);
    let labels = p.labels();
    let n = labels.len();
    let mut cut = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            if labels[i] != labels[j] && adj.has(i, j) {
                cut += 1;
            }
        }
    }
    let mut total = Rational::zero();
    for block in 0..2 {
        let volume: usize = (0..n).filter(|&i| labels[i] == block).map(|i| adj.degree(i)).sum();
        if volume == 0 {
            return Err(UtilityError::ZeroVolume(block));
        }
        total += Rational::ratio(cut as i64, volume as i64);
    }
    Ok(total)
}

/// Largest pairwise distance within `block` (zero for singletons).
pub fn diameter(m: &MetricInstance, block: &[usize]) -> Rational {
    let mut best = Rational::zero();
    for (a, &i) in block.iter().enumerate() {
        for &j in &block[a + 1..] {
            if m.d(i, j) > &best {
                best = m.d(i, j).clone();
            }
        }
    }
    best
}

pub(crate) fn cl_score(m: &MetricInstance, labels: &[usize], max_diameter: &Rational) -> Rational {
    let n = labels.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if labels[i] == labels[j] && m.d(i, j) > max_diameter {
                return penalty_square(n);
            }
        }
    }
    Rational::zero()
}

/// Zero when every block has diameter at most `max_diameter`, else `-n²`.
pub fn u_cl(m: &MetricInstance, p: &Partition, max_diameter: &Rational) -> Result<Rational, UtilityError> {
    check(m.n(), p)?;
    Ok(cl_score(m, p.labels(), max_diameter))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::graph_metric;
    use crate::rational::q;

    fn part(blocks: &[&[usize]], n: usize) -> Partition {
        let blocks: Vec<Vec<usize>> = blocks.iter().map(|b| b.iter().map(|&p| p - 1).collect()).collect();
        Partition::from_blocks(n, &blocks).unwrap()
    }

    fn k3() -> MetricInstance {
        graph_metric(&GraphInstance::complete(3))
    }

    fn path3() -> MetricInstance {
        graph_metric(&GraphInstance::path(3))
    }

    fn k3_plus_isolated() -> MetricInstance {
        graph_metric(&GraphInstance::new(4, [(0, 1), (1, 2), (0, 2)]).unwrap())
    }

    fn c4() -> MetricInstance {
        graph_metric(&GraphInstance::cycle(4))
    }

    #[test]
    fn conf_examples() {
        assert_eq!(u_conf(&k3(), &Partition::whole(3)).unwrap(), -3);
        assert_eq!(u_conf(&k3(), &Partition::singletons(3)).unwrap(), 0);
        assert_eq!(u_conf(&path3(), &part(&[&[1, 3], &[2]], 3)).unwrap(), 0);
    }

    #[test]
    fn med_examples() {
        assert_eq!(u_med(&k3(), &Partition::singletons(3)).unwrap(), 0);
        let two = MetricInstance::from_i64_rows(&[&[0, 2], &[2, 0]]).unwrap();
        assert_eq!(u_med(&two, &Partition::whole(2)).unwrap(), -2);
        assert_eq!(u_med(&k3(), &Partition::whole(3)).unwrap(), -2);
    }

    #[test]
    fn dens_examples() {
        let m = k3_plus_isolated();
        let one = Rational::one();
        assert_eq!(u_dens(&m, &part(&[&[1, 2, 3], &[4]], 4), &one, 3, &q(2, 1)).unwrap(), 3);
        assert_eq!(u_dens(&m, &part(&[&[1, 2, 4], &[3]], 4), &one, 3, &q(2, 1)).unwrap(), -16);
        assert_eq!(u_dens(&m, &part(&[&[1, 2], &[3, 4]], 4), &one, 2, &q(1, 1)).unwrap(), 2);
        assert_eq!(
            u_dens(&m, &Partition::whole(4), &one, 3, &q(2, 1)),
            Err(UtilityError::WrongK { expected: 2, found: 1 })
        );
    }

    #[test]
    fn dens_designated_block_may_be_second() {
        let m = k3_plus_isolated();
        let p = part(&[&[4], &[1, 2, 3]], 4);
        assert_eq!(p.labels(), &[0, 0, 0, 1]);
        let p = part(&[&[1], &[2, 3, 4]], 4);
        // {2,3,4} is not connected, {1} has the wrong size
        assert_eq!(u_dens(&m, &p, &Rational::one(), 3, &q(2, 1)).unwrap(), -16);
        let g = graph_metric(&GraphInstance::new(4, [(1, 2), (2, 3), (1, 3)]).unwrap());
        assert_eq!(u_dens(&g, &p, &Rational::one(), 3, &q(2, 1)).unwrap(), 3);
    }

    #[test]
    fn opt_examples() {
        let m = k3_plus_isolated();
        let p = part(&[&[1, 2, 3], &[4]], 4);
        assert_eq!(u_opt(&m, &p, &q(2, 1), 3, 3).unwrap(), 3);
        assert_eq!(opt_candidate_scales(&m, &q(2, 1)), vec![q(1, 1), q(2, 1)]);
        assert_eq!(u_opt(&m, &p, &q(1, 2), 3, 0).unwrap(), -16);
        for labels in [[0, 0, 0, 1], [0, 1, 1, 1], [0, 0, 1, 1], [0, 1, 0, 1]] {
            let p = Partition::canonicalize(&labels).unwrap();
            for size in 1..4 {
                for tau in 0..=3 {
                    let delta = q(2 * tau, size as i64);
                    assert_eq!(
                        u_opt(&m, &p, &Rational::one(), size, tau as usize).unwrap(),
                        u_dens(&m, &p, &Rational::one(), size, &delta).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn bis_examples() {
        let one = Rational::one();
        assert_eq!(u_bis(&c4(), &part(&[&[1, 2], &[3, 4]], 4), &one).unwrap(), -2);
        assert_eq!(u_bis(&c4(), &part(&[&[1, 3], &[2, 4]], 4), &one).unwrap(), -4);
        assert_eq!(u_bis(&c4(), &part(&[&[1], &[2, 3, 4]], 4), &one).unwrap(), -16);
    }

    #[test]
    fn ncut_examples() {
        let one = Rational::one();
        assert_eq!(ncut(&c4(), &part(&[&[1, 2], &[3, 4]], 4), &one).unwrap(), 1);
        assert_eq!(ncut(&c4(), &part(&[&[1, 3], &[2, 4]], 4), &one).unwrap(), 2);
        let two_edges = graph_metric(&GraphInstance::new(4, [(0, 1), (2, 3)]).unwrap());
        assert_eq!(ncut(&two_edges, &part(&[&[1, 2], &[3, 4]], 4), &one).unwrap(), 0);
        let isolated = graph_metric(&GraphInstance::new(3, [(0, 1)]).unwrap());
        assert_eq!(
            ncut(&isolated, &part(&[&[1, 2], &[3]], 3), &one),
            Err(UtilityError::ZeroVolume(1))
        );
    }

    #[test]
    fn cl_examples() {
        let one = Rational::one();
        assert_eq!(u_cl(&k3(), &Partition::whole(3), &one).unwrap(), 0);
        assert_eq!(u_cl(&path3(), &part(&[&[1, 3], &[2]], 3), &one).unwrap(), -9);
        assert_eq!(u_cl(&path3(), &Partition::singletons(3), &q(1, 100)).unwrap(), 0);
    }

    #[test]
    fn size_mismatch_is_reported() {
        assert!(matches!(u_conf(&k3(), &Partition::whole(2)), Err(UtilityError::Partition(_))));
    }
}
