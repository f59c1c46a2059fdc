//! Certificate check for isotropic Gaussian mixtures with a shared variance.
//!
//! Squared distances are exact; scores and the log-likelihood are `f64`.

use serde::{Deserialize, Serialize};

use super::UtilityError;
use crate::model::EuclideanInstance;
use crate::partition::Partition;
use crate::rational::Rational;

/// Relative tolerance under which two posterior scores count as tied.
const TIE_TOLERANCE: f64 = 1e-12;

/// Mixture parameters: weights on the simplex, one mean per component and a
/// common standard deviation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GmmCertificate {
    pub weights: Vec<Rational>,
    pub means: Vec<Vec<Rational>>,
    pub sigma: Rational,
}

impl GmmCertificate {
    fn validate(&self, dim: usize) -> Result<(), UtilityError> {
        let bad = |msg: String| Err(UtilityError::InvalidTheta(msg));
        if self.weights.is_empty() || self.weights.len() != self.means.len() {
            return bad(format!("{} weights for {} means", self.weights.len(), self.means.len()));
        }
        if self.weights.iter().any(Rational::is_negative) {
            return bad("weights must be nonnegative".into());
        }
        if self.weights.iter().sum::<Rational>() != 1 {
            return bad("weights must sum to 1".into());
        }
        if !self.sigma.is_positive() {
            return bad("sigma must be positive".into());
        }
        if let Some(mu) = self.means.iter().find(|mu| mu.len() != dim) {
            return bad(format!("mean has dimension {}, points have {dim}", mu.len()));
        }
        Ok(())
    }
}

fn squared_distance(x: &[Rational], mu: &[Rational]) -> Rational {
    x.iter().zip(mu).map(|(a, b)| (a - b).square()).sum()
}

/// Log-domain posterior scores `log π_a - ‖x - μ_a‖² / (2σ²)` for one point.
fn scores(x: &[Rational], theta: &GmmCertificate) -> Vec<f64> {
    let two_var = (Rational::from_integer(2) * theta.sigma.square()).to_f64();
    theta
        .weights
        .iter()
        .zip(&theta.means)
        .map(|(w, mu)| {
            let log_w = if w.is_zero() { f64::NEG_INFINITY } else { w.to_f64().ln() };
            log_w - squared_distance(x, mu).to_f64() / two_var
        })
        .collect()
}

fn argmax_with_ties(scores: &[f64]) -> usize {
    let best = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let tol = TIE_TOLERANCE * best.abs();
    scores.iter().position(|&s| s >= best - tol).unwrap_or(0)
}

/// Hard partition induced by maximum posterior responsibility; ties go to the
/// lowest component index.
pub fn induced_partition(e: &EuclideanInstance, theta: &GmmCertificate) -> Result<Partition, UtilityError> {
    theta.validate(e.dim())?;
    let labels: Vec<usize> = e.points().iter().map(|x| argmax_with_ties(&scores(x, theta))).collect();
    Ok(Partition::canonicalize(&labels)?)
}

/// Mixture log-likelihood `Σ_i log Σ_a π_a φ_σ(x_i - μ_a)`.
pub fn gmm_log_likelihood(e: &EuclideanInstance, theta: &GmmCertificate) -> Result<f64, UtilityError> {
    theta.validate(e.dim())?;
    let sigma = theta.sigma.to_f64();
    let log_norm = -(e.dim() as f64) * 0.5 * (2.0 * std::f64::consts::PI * sigma * sigma).ln();
    Ok(e
        .points()
        .iter()
        .map(|x| {
            let s = scores(x, theta);
            let m = s.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            log_norm + m + s.iter().map(|v| (v - m).exp()).sum::<f64>().ln()
        })
        .sum())
}

/// Checks that `theta` induces exactly the partition `p` and returns its
/// log-likelihood.
pub fn verify_gmm_certificate(
    e: &EuclideanInstance,
    p: &Partition,
    theta: &GmmCertificate,
) -> Result<f64, UtilityError> {
    p.check_size(e.n())?;
    if theta.weights.len() != p.k() {
        return Err(UtilityError::InvalidTheta(format!(
            "{} components for a {}-block partition",
            theta.weights.len(),
            p.k()
        )));
    }
    let induced = induced_partition(e, theta)?;
    if &induced != p {
        return Err(UtilityError::PartitionMismatch { induced: induced.to_string(), claimed: p.to_string() });
    }
    gmm_log_likelihood(e, theta)
}
