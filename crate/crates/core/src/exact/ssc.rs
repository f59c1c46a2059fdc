//! Brute-force sparsest block-supported self-representation. Exponential in
//! the block sizes; meant for a handful of columns.

use super::combinations;
use crate::linalg::{solve, RationalMatrix};
use crate::partition::Partition;
use crate::rational::Rational;

/// Fewest columns among `candidates` whose span contains column `col`, with
/// the coefficients found. Supports are tried by size, then lexicographically.
pub fn min_column_support(x: &RationalMatrix, col: usize, candidates: &[usize]) -> Option<(Vec<usize>, Vec<Rational>)> {
    let target = x.column(col);
    if target.iter().all(Rational::is_zero) {
        return Some((Vec::new(), Vec::new()));
    }
    for size in 1..=candidates.len() {
        for pick in combinations(candidates.len(), size) {
            let support: Vec<usize> = pick.iter().map(|&i| candidates[i]).collect();
            if let Some(coeffs) = solve(&x.select_columns(&support), &target) {
                return Some((support, coeffs));
            }
        }
    }
    None
}

/// Sparsest `Z` with `X = XZ`, zero diagonal and support inside the blocks of
/// `p`. Returns its nonzero count and `Z`, or `None` when some column cannot
/// be written from the other columns of its block.
pub fn min_block_support(x: &RationalMatrix, p: &Partition) -> Option<(usize, RationalMatrix)> {
    let n = x.cols();
    assert_eq!(p.n(), n, "partition must cover every data column");
    let mut z = RationalMatrix::zeros(n, n);
    for col in 0..n {
        let candidates: Vec<usize> = (0..n).filter(|&r| r != col && p.block_of(r) == p.block_of(col)).collect();
        let (support, coeffs) = min_column_support(x, col, &candidates)?;
        for (row, value) in support.into_iter().zip(coeffs) {
            z.set(row, col, value);
        }
    }
    Some((z.nonzeros(), z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::utilities::verify_ssc_certificate;

    #[test]
    fn duplicate_columns_need_one_each() {
        let x = RationalMatrix::from_i64_rows(&[&[1, 1, 0], &[0, 0, 2]]).unwrap();
        assert!(min_block_support(&x, &Partition::whole(3)).is_none());
        let x = RationalMatrix::from_i64_rows(&[&[1, 2, 3], &[1, 2, 3]]).unwrap();
        let (count, z) = min_block_support(&x, &Partition::whole(3)).unwrap();
        assert_eq!(count, 3);
        assert!(verify_ssc_certificate(&x, &Partition::whole(3), &z, 3).unwrap());
        assert!(min_block_support(&x, &Partition::singletons(3)).is_none());
    }

    #[test]
    fn zero_columns_cost_nothing() {
        let x = RationalMatrix::from_i64_rows(&[&[0, 1, 1]]).unwrap();
        let (count, _) = min_block_support(&x, &Partition::whole(3)).unwrap();
        assert_eq!(count, 2);
    }
}
