//! Affinity propagation: damped responsibility and availability messages.

use serde::{Deserialize, Serialize};

use super::{HeuristicError, HeuristicRun, Method};
use crate::partition::Partition;
use crate::utilities::{ap_objective, SimilarityMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApConfig {
    /// Weight kept from the previous message, in `[0, 1)`.
    pub damping: f64,
    pub max_iters: usize,
    /// Iterations the exemplar set must stay fixed to count as converged.
    pub stable_window: usize,
}

impl Default for ApConfig {
    fn default() -> Self {
        ApConfig { damping: 0.5, max_iters: 200, stable_window: 15 }
    }
}

/// Exemplars are the points whose self-responsibility plus self-availability
/// is positive; with none, the single best such point.
fn exemplar_set(r: &[Vec<f64>], a: &[Vec<f64>]) -> Vec<usize> {
    let n = r.len();
    let evidence: Vec<f64> = (0..n).map(|k| r[k][k] + a[k][k]).collect();
    let set: Vec<usize> = (0..n).filter(|&k| evidence[k] > 0.0).collect();
    if !set.is_empty() {
        return set;
    }
    let mut best = 0;
    for k in 1..n {
        if evidence[k] > evidence[best] {
            best = k;
        }
    }
    vec![best]
}

/// Exemplars choose themselves, every other point its most similar exemplar
/// (lowest index on ties), which makes the assignment consistent.
fn consistent_assignment(s: &SimilarityMatrix, exemplars: &[usize]) -> Vec<usize> {
    (0..s.n())
        .map(|i| {
            if exemplars.contains(&i) {
                return i;
            }
            let mut best = exemplars[0];
            for &e in &exemplars[1..] {
                if s.s(i, e) > s.s(i, best) {
                    best = e;
                }
            }
            best
        })
        .collect()
}

pub fn ap_messages(s: &SimilarityMatrix, config: &ApConfig) -> Result<HeuristicRun, HeuristicError> {
    let n = s.n();
    if n == 0 {
        return Err(HeuristicError::Empty);
    }
    if !(0.0..1.0).contains(&config.damping) {
        return Err(HeuristicError::InvalidParameter(format!("damping {} is outside [0, 1)", config.damping)));
    }
    if config.stable_window == 0 {
        return Err(HeuristicError::InvalidParameter("stable window must be positive".into()));
    }
    let sim = s.to_f64();
    let lambda = config.damping;
    let mut r = vec![vec![0.0f64; n]; n];
    let mut a = vec![vec![0.0f64; n]; n];
    let mut exemplars = vec![0];
    let mut trajectory = Vec::new();
    let mut stable = 0;
    let mut iterations = 0;
    let mut converged = n == 1;
    while !converged && iterations < config.max_iters {
        iterations += 1;
        for i in 0..n {
            // best and second-best of a(i,k') + s(i,k')
            let (mut first, mut first_k, mut second) = (f64::NEG_INFINITY, 0, f64::NEG_INFINITY);
            for k in 0..n {
                let v = a[i][k] + sim[i][k];
                if v > first {
                    second = first;
                    first = v;
                    first_k = k;
                } else if v > second {
                    second = v;
                }
            }
            for k in 0..n {
                let competitor = if k == first_k { second } else { first };
                r[i][k] = lambda * r[i][k] + (1.0 - lambda) * (sim[i][k] - competitor);
            }
        }
        for k in 0..n {
            let support: f64 = (0..n).filter(|&i| i != k).map(|i| r[i][k].max(0.0)).sum();
            for i in 0..n {
                let fresh = if i == k { support } else { (r[k][k] + support - r[i][k].max(0.0)).min(0.0) };
                a[i][k] = lambda * a[i][k] + (1.0 - lambda) * fresh;
            }
        }
        let next = exemplar_set(&r, &a);
        if next == exemplars {
            stable += 1;
        } else {
            stable = 1;
            exemplars = next;
        }
        let assignment = consistent_assignment(s, &exemplars);
        trajectory.push(ap_objective(s, &assignment).expect("assignment is consistent").to_f64());
        converged = stable >= config.stable_window;
    }
    let assignment = consistent_assignment(s, &exemplars);
    let value = ap_objective(s, &assignment).expect("assignment is consistent");
    Ok(HeuristicRun {
        method: Method::Ap,
        seed: None,
        iterations,
        partition: Partition::canonicalize(&assignment)?,
        value,
        trajectory,
        converged,
        exemplars: Some(exemplars),
    })
}
