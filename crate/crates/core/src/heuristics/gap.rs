//! Optimality gaps: heuristic values against the exact oracle on the same
//! instance.

use serde::Serialize;

use super::{ap_messages, greedy_complete_linkage, lloyd, pam_swap, ApConfig, HeuristicError, Method};
use crate::exact::oracles::{ap_optimum, OracleError};
use crate::exact::{solve_ucp, SolveError};
use crate::instance::{InstanceError, Payload, UcpDecisionInstance, Utility};
use crate::model::MetricInstance;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GapError {
    #[error("method {method} does not apply to a {payload} payload")]
    Unsupported { method: Method, payload: &'static str },
    #[error(transparent)]
    Heuristic(#[from] HeuristicError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// One line of a gap table. Values are in maximisation form, so the gap
/// `exact_value - heuristic_value` is never negative.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapRow {
    pub instance_id: String,
    pub method: Method,
    pub seed: Option<u64>,
    pub heuristic_value: Rational,
    pub exact_value: Rational,
    pub abs_gap: Rational,
    /// `abs_gap / |exact_value|`; zero when both are zero.
    pub rel_gap: f64,
}

impl GapRow {
    fn new(instance_id: &str, method: Method, seed: Option<u64>, heuristic: Rational, exact: Rational) -> Self {
        let abs_gap = &exact - &heuristic;
        let rel_gap = if abs_gap.is_zero() {
            0.0
        } else if exact.is_zero() {
            f64::INFINITY
        } else {
            (&abs_gap / &exact.abs()).to_f64()
        };
        GapRow {
            instance_id: instance_id.to_string(),
            method,
            seed,
            heuristic_value: heuristic,
            exact_value: exact,
            abs_gap,
            rel_gap,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.abs_gap.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapSummary {
    pub runs: usize,
    pub optimal: usize,
    pub fraction_optimal: f64,
    pub max_abs_gap: Rational,
}

pub fn summarize(rows: &[GapRow]) -> GapSummary {
    let optimal = rows.iter().filter(|r| r.is_optimal()).count();
    GapSummary {
        runs: rows.len(),
        optimal,
        fraction_optimal: if rows.is_empty() { 0.0 } else { optimal as f64 / rows.len() as f64 },
        max_abs_gap: rows.iter().map(|r| r.abs_gap.clone()).max().unwrap_or_else(Rational::zero),
    }
}

/// Minus the smallest achievable largest diameter over `k`-block partitions,
/// found as the first candidate diameter whose clique-style utility reaches 0.
pub fn linkage_optimum(m: &MetricInstance, k: usize) -> Result<Rational, GapError> {
    let mut candidates = m.positive_distances();
    candidates.insert(0, Rational::zero());
    for diameter in candidates {
        let inst = UcpDecisionInstance::new(Payload::Metric(m.clone()), Utility::Cl { diameter: diameter.clone() }, k, Rational::zero())?;
        if solve_ucp(&inst)?.optimum.is_zero() {
            return Ok(-diameter);
        }
    }
    unreachable!("the largest distance admits every partition")
}

/// Runs `method` once per seed (once in total for deterministic methods) and
/// compares each result with the exact optimum for the instance's payload and `k`.
pub fn gap_rows(
    instance_id: &str,
    inst: &UcpDecisionInstance,
    method: Method,
    seeds: &[u64],
    ap: &ApConfig,
) -> Result<Vec<GapRow>, GapError> {
    let unsupported = || GapError::Unsupported { method, payload: inst.payload().kind() };
    let k = inst.k();
    let mut rows = Vec::new();
    match (method, inst.payload()) {
        (Method::Lloyd, Payload::Euclidean(e)) => {
            let exact_inst = UcpDecisionInstance::new(Payload::Euclidean(e.clone()), Utility::Kmeans, k, Rational::zero())?;
            let exact = solve_ucp(&exact_inst)?.optimum;
            for &seed in seeds {
                rows.push(GapRow::new(instance_id, method, Some(seed), lloyd(e, k, seed)?.value, exact.clone()));
            }
        }
        (Method::Linkage, Payload::Metric(m)) => {
            let exact = linkage_optimum(m, k)?;
            rows.push(GapRow::new(instance_id, method, None, greedy_complete_linkage(m, k)?.value, exact));
        }
        (Method::Pam, Payload::Similarity(s)) => {
            let exact_inst = UcpDecisionInstance::new(Payload::Similarity(s.clone()), Utility::Exemplar, k, Rational::zero())?;
            let exact = solve_ucp(&exact_inst)?.optimum;
            for &seed in seeds {
                rows.push(GapRow::new(instance_id, method, Some(seed), pam_swap(s, k, seed)?.value, exact.clone()));
            }
        }
        (Method::Ap, Payload::Similarity(s)) => {
            let (exact, _) = ap_optimum(s)?;
            rows.push(GapRow::new(instance_id, method, None, ap_messages(s, ap)?.value, exact));
        }
        _ => return Err(unsupported()),
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{graph_metric, EuclideanInstance, GraphInstance};

    #[test]
    fn lloyd_gaps_are_nonnegative() {
        let inst = UcpDecisionInstance::new(
            Payload::Euclidean(EuclideanInstance::from_line(&[0, 1, 10, 11, 20, 21])),
            Utility::Kmeans,
            3,
            Rational::zero(),
        )
        .unwrap();
        let seeds: Vec<u64> = (0..30).collect();
        let rows = gap_rows("line6", &inst, Method::Lloyd, &seeds, &ApConfig::default()).unwrap();
        assert_eq!(rows.len(), 30);
        assert!(rows.iter().all(|r| !r.abs_gap.is_negative()));
        assert_eq!(rows[0].exact_value, Rational::ratio(-3, 2));
        let summary = summarize(&rows);
        assert!(summary.optimal > 0);
    }

    #[test]
    fn linkage_gap_on_path() {
        let g = GraphInstance::new(4, [(2, 0), (0, 1), (1, 3)]).unwrap();
        let inst = UcpDecisionInstance::new(Payload::Metric(graph_metric(&g)), Utility::Conf, 2, Rational::zero()).unwrap();
        let rows = gap_rows("trap", &inst, Method::Linkage, &[], &ApConfig::default()).unwrap();
        assert_eq!(rows[0].exact_value, -1);
        assert_eq!(rows[0].abs_gap, 1);
        assert_eq!(rows[0].rel_gap, 1.0);
    }

    #[test]
    fn mismatched_payload_is_rejected() {
        let g = GraphInstance::complete(3);
        let inst = UcpDecisionInstance::new(Payload::Metric(graph_metric(&g)), Utility::Conf, 2, Rational::zero()).unwrap();
        assert!(matches!(
            gap_rows("x", &inst, Method::Lloyd, &[1], &ApConfig::default()),
            Err(GapError::Unsupported { .. })
        ));
    }
}
