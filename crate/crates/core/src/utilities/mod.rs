//! Partition utilities. Each maps a partition of an explicit instance to an
//! exact rational score (higher is better), except the GMM certificate
//! verifier, which reports a floating-point log-likelihood.

mod euclid;
mod exemplar;
mod gmm;
mod metric;
mod ssc;

pub use euclid::{u_birch, u_kmeans, CfError, CfTriple};
pub use exemplar::{
    ap_objective, assignment_partition, exemplar_set_value, u_exemplar, SimilarityMatrix,
};
pub use gmm::{gmm_log_likelihood, induced_partition, verify_gmm_certificate, GmmCertificate};
pub use metric::{diameter, ncut, u_bis, u_cl, u_conf, u_dens, u_med, u_opt, opt_candidate_scales};
pub use ssc::verify_ssc_certificate;

pub use crate::linalg::exact_rank;

pub(crate) use metric::{bis_score, cl_score, conf_score, dens_score, med_score, UnitAdjacency};
pub(crate) use euclid::{birch_score, check_cf_dims, kmeans_score, point_squares};
pub(crate) use exemplar::exemplar_score;

use crate::partition::PartitionError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UtilityError {
    #[error("utility needs exactly {expected} blocks, partition has {found}")]
    WrongK { expected: usize, found: usize },
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("block {0} has zero volume in the neighbourhood graph")]
    ZeroVolume(usize),
    #[error("assignment is inconsistent: point {} picks {} but {} does not pick itself", .i + 1, .j + 1, .j + 1)]
    ConsistencyViolation { i: usize, j: usize },
    #[error("assignment target {} is out of range", .0 + 1)]
    AssignmentOutOfRange(usize),
    #[error("induced partition {induced} differs from the claimed partition {claimed}")]
    PartitionMismatch { induced: String, claimed: String },
    #[error("invalid mixture parameters: {0}")]
    InvalidTheta(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// `-n²` as a rational; the penalty used by constrained utilities.
pub(crate) fn penalty_square(n: usize) -> crate::Rational {
    -crate::Rational::from(n * n)
}
