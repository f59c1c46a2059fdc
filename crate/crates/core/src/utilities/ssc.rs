//! Self-expressive representation certificates.

use super::UtilityError;
use crate::linalg::RationalMatrix;
use crate::partition::Partition;

/// True iff `X = XZ` exactly, `diag(Z) = 0`, every nonzero `Z[r][c]` joins
/// two points of the same block, and `Z` has at most `max_nonzeros` nonzeros.
pub fn verify_ssc_certificate(
    x: &RationalMatrix,
    p: &Partition,
    z: &RationalMatrix,
    max_nonzeros: usize,
) -> Result<bool, UtilityError> {
    let n = x.cols();
    if z.rows() != n || z.cols() != n || p.n() != n {
        return Err(UtilityError::DimensionMismatch(format!(
            "data has {n} columns, representation is {}x{}, partition covers {} points",
            z.rows(),
            z.cols(),
            p.n()
        )));
    }
    for r in 0..n {
        for c in 0..n {
            if z.get(r, c).is_zero() {
                continue;
            }
            if r == c || p.block_of(r) != p.block_of(c) {
                return Ok(false);
            }
        }
    }
    if z.nonzeros() > max_nonzeros {
        return Ok(false);
    }
    let xz = x.mul(z).map_err(|e| UtilityError::DimensionMismatch(e.to_string()))?;
    Ok(&xz == x)
}
