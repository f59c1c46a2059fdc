//! Runs one reduction end to end: source oracle on one side, reduction plus
//! UCP enumeration on the other, and the back-mapped certificate checked by
//! the source verifier.

use serde::Serialize;

use super::oracles::{source_decide, verify_source_certificate, OracleError};
use super::solver::{solve_ucp, SolveError};
use crate::reductions::{reduce, BackMapError, ReductionError, ReductionKind, SourceInstance};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    BackMap(#[from] BackMapError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub kind: ReductionKind,
    pub params: String,
    pub source_answer: bool,
    pub ucp_answer: bool,
    pub agree: bool,
    /// Back-mapped certificate, when the UCP side says YES.
    pub witness: Option<String>,
    /// Whether the source verifier accepts that certificate.
    pub certificate_accepted: Option<bool>,
}

impl VerificationReport {
    /// Agreement, and on YES an accepted certificate.
    pub fn passed(&self) -> bool {
        self.agree && self.certificate_accepted != Some(false)
    }
}

pub fn verify_reduction(source: &SourceInstance) -> Result<VerificationReport, VerifyError> {
    let source_answer = source_decide(source)?.is_yes();
    let out = reduce(source)?;
    let result = solve_ucp(&out.instance)?;
    let ucp_answer = &result.optimum >= out.instance.threshold();
    let (witness, certificate_accepted) = if ucp_answer {
        let cert = out.back_map.apply(&out.instance, &result.argmax, result.representation.as_ref())?;
        let accepted = verify_source_certificate(source, &cert);
        (Some(cert.to_string()), Some(accepted))
    } else {
        (None, None)
    };
    Ok(VerificationReport {
        kind: source.kind(),
        params: source.params(),
        source_answer,
        ucp_answer,
        agree: source_answer == ucp_answer,
        witness,
        certificate_accepted,
    })
}
