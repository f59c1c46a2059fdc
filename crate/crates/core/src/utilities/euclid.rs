//! Sum-of-squares utilities: k-means on raw points and BIRCH on clustering
//! features.

use serde::{Deserialize, Serialize};

use super::UtilityError;
use crate::model::EuclideanInstance;
use crate::partition::{blocks_of, Partition};
use crate::rational::Rational;

fn norm_squared(v: &[Rational]) -> Rational {
    v.iter().map(Rational::square).sum()
}

/// Within-block sum of squares `ΣSS - ‖ΣLS‖²/N` for one block of summaries.
fn block_sse<'a>(members: impl Iterator<Item = (u64, &'a [Rational], &'a Rational)>, dim: usize) -> Rational {
    let mut count = 0u64;
    let mut linear = vec![Rational::zero(); dim];
    let mut squared = Rational::zero();
    for (n, ls, ss) in members {
        count += n;
        for (acc, x) in linear.iter_mut().zip(ls) {
            *acc += x;
        }
        squared += ss;
    }
    squared - norm_squared(&linear) / Rational::from(count as usize)
}

pub(crate) fn kmeans_score(e: &EuclideanInstance, squares: &[Rational], labels: &[usize], k: usize) -> Rational {
    let mut total = Rational::zero();
    for block in blocks_of(labels, k) {
        let mut sum = vec![Rational::zero(); e.dim()];
        let mut squared = Rational::zero();
        for &i in &block {
            for (acc, x) in sum.iter_mut().zip(e.point(i)) {
                *acc += x;
            }
            squared += &squares[i];
        }
        total += squared - norm_squared(&sum) / Rational::from(block.len());
    }
    -total
}

pub(crate) fn point_squares(e: &EuclideanInstance) -> Vec<Rational> {
    e.points().iter().map(|x| norm_squared(x)).collect()
}

/// Minus the k-means cost of the partition, computed per block as
/// `Σ‖x‖² - ‖Σx‖²/|C|` so the value is exact.
pub fn u_kmeans(e: &EuclideanInstance, p: &Partition) -> Result<Rational, UtilityError> {
    p.check_size(e.n())?;
    Ok(kmeans_score(e, &point_squares(e), p.labels(), p.k()))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CfError {
    #[error("clustering feature must summarise at least one point")]
    ZeroCount,
    #[error("squared sum {ss} is below ‖LS‖²/N = {bound}")]
    SquaredSumTooSmall { ss: Rational, bound: Rational },
}

/// Clustering feature `(N, LS, SS)`: point count, linear sum and sum of
/// squared norms of a microcluster.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CfTriple {
    count: u64,
    linear_sum: Vec<Rational>,
    squared_sum: Rational,
}

impl CfTriple {
    pub fn new(count: u64, linear_sum: Vec<Rational>, squared_sum: Rational) -> Result<Self, CfError> {
        if count == 0 {
            return Err(CfError::ZeroCount);
        }
        let bound = norm_squared(&linear_sum) / Rational::from(count as usize);
        if squared_sum < bound {
            return Err(CfError::SquaredSumTooSmall { ss: squared_sum, bound });
        }
        Ok(CfTriple { count, linear_sum, squared_sum })
    }

    /// Feature of a single point.
    pub fn from_point(x: &[Rational]) -> Self {
        CfTriple { count: 1, linear_sum: x.to_vec(), squared_sum: norm_squared(x) }
    }

    pub fn from_points<'a>(points: impl IntoIterator<Item = &'a [Rational]>) -> Option<Self> {
        let mut iter = points.into_iter();
        let mut cf = Self::from_point(iter.next()?);
        for x in iter {
            cf = cf.merge(&Self::from_point(x));
        }
        Some(cf)
    }

    /// Additivity: the feature of a union is the sum of the features.
    pub fn merge(&self, other: &CfTriple) -> CfTriple {
        CfTriple {
            count: self.count + other.count,
            linear_sum: self.linear_sum.iter().zip(&other.linear_sum).map(|(a, b)| a + b).collect(),
            squared_sum: &self.squared_sum + &other.squared_sum,
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn linear_sum(&self) -> &[Rational] {
        &self.linear_sum
    }

    pub fn squared_sum(&self) -> &Rational {
        &self.squared_sum
    }

    pub fn dim(&self) -> usize {
        self.linear_sum.len()
    }

    pub fn centroid(&self) -> Vec<Rational> {
        let n = Rational::from(self.count as usize);
        self.linear_sum.iter().map(|x| x / &n).collect()
    }
}

#[derive(Deserialize)]
struct CfTripleRaw {
    count: u64,
    linear_sum: Vec<Rational>,
    squared_sum: Rational,
}

impl<'de> Deserialize<'de> for CfTriple {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = CfTripleRaw::deserialize(deserializer)?;
        CfTriple::new(raw.count, raw.linear_sum, raw.squared_sum).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn check_cf_dims(cfs: &[CfTriple]) -> Result<usize, UtilityError> {
    let dim = cfs.first().map_or(0, CfTriple::dim);
    if let Some((idx, cf)) = cfs.iter().enumerate().find(|(_, cf)| cf.dim() != dim) {
        return Err(UtilityError::DimensionMismatch(format!(
            "feature {} has dimension {}, expected {dim}",
            idx + 1,
            cf.dim()
        )));
    }
    Ok(dim)
}

pub(crate) fn birch_score(cfs: &[CfTriple], dim: usize, labels: &[usize], k: usize) -> Rational {
    let mut total = Rational::zero();
    for block in blocks_of(labels, k) {
        total += block_sse(
            block.iter().map(|&r| (cfs[r].count, cfs[r].linear_sum.as_slice(), &cfs[r].squared_sum)),
            dim,
        );
    }
    -total
}

/// Minus the sum-of-squares cost of merging microclusters block by block.
pub fn u_birch(cfs: &[CfTriple], p: &Partition) -> Result<Rational, UtilityError> {
    p.check_size(cfs.len())?;
    let dim = check_cf_dims(cfs)?;
    Ok(birch_score(cfs, dim, p.labels(), p.k()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn kmeans_examples() {
        let e = EuclideanInstance::from_line(&[0, 2]);
        assert_eq!(u_kmeans(&e, &Partition::whole(2)).unwrap(), -2);
        assert_eq!(u_kmeans(&e, &Partition::singletons(2)).unwrap(), 0);
        let e = EuclideanInstance::from_line(&[5, -3, 7, 1]);
        assert_eq!(u_kmeans(&e, &Partition::singletons(4)).unwrap(), 0);
    }

    #[test]
    fn birch_examples() {
        let cfs: Vec<CfTriple> = [0i64, 2].iter().map(|&x| CfTriple::from_point(&[x.into()])).collect();
        assert_eq!(u_birch(&cfs, &Partition::whole(2)).unwrap(), -2);
        assert_eq!(u_birch(&cfs, &Partition::singletons(2)).unwrap(), 0);
        let cf = CfTriple::new(2, vec![q(2, 1)], q(4, 1)).unwrap();
        assert_eq!(u_birch(&[cf], &Partition::whole(1)).unwrap(), -2);
    }

    #[test]
    fn cf_validation_and_dimensions() {
        assert_eq!(CfTriple::new(0, vec![], q(0, 1)), Err(CfError::ZeroCount));
        assert!(matches!(CfTriple::new(2, vec![q(2, 1)], q(1, 1)), Err(CfError::SquaredSumTooSmall { .. })));
        let mixed = vec![CfTriple::from_point(&[q(1, 1)]), CfTriple::from_point(&[q(1, 1), q(0, 1)])];
        assert!(matches!(u_birch(&mixed, &Partition::whole(2)), Err(UtilityError::DimensionMismatch(_))));
    }

    #[test]
    fn merged_feature_matches_points() {
        let pts = [vec![q(1, 2), q(3, 1)], vec![q(-1, 1), q(0, 1)], vec![q(2, 3), q(5, 7)]];
        let cf = CfTriple::from_points(pts.iter().map(Vec::as_slice)).unwrap();
        let e = EuclideanInstance::new(pts.to_vec()).unwrap();
        assert_eq!(u_birch(&[cf], &Partition::whole(1)).unwrap(), u_kmeans(&e, &Partition::whole(3)).unwrap());
    }
}
