//! Exact UCP by enumerating every `k`-block partition.

use rayon::prelude::*;
use serde::Serialize;

use crate::instance::{Evaluator, InstanceError, Payload, UcpDecisionInstance};
use crate::linalg::RationalMatrix;
use crate::partition::{feasible_prefixes, stirling2, Partition, PartitionIter};
use crate::rational::Rational;

/// Default cap on the number of points accepted by the enumerating solver.
pub const DEFAULT_MAX_N: usize = 12;

/// Environment variable overriding [`DEFAULT_MAX_N`].
pub const MAX_N_ENV: &str = "UCP_MAX_N";

/// Below this many partitions the enumeration stays on one thread.
const PARALLEL_THRESHOLD: u128 = 4096;

/// Labels fixed per parallel task.
const PREFIX_LEN: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    pub max_n: usize,
    pub parallel: bool,
}

impl Default for SolverConfig {
    /// Cap from `UCP_MAX_N` when set to a valid number, else 12.
    fn default() -> Self {
        let max_n = std::env::var(MAX_N_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_MAX_N);
        SolverConfig { max_n, parallel: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("instance has n={n} points, above the enumeration cap of {cap} (raise it with UCP_MAX_N)")]
    InstanceTooLarge { n: usize, cap: usize },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Optimum over all `k`-block partitions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub optimum: Rational,
    /// Lexicographically least optimal partition in restricted-growth form.
    pub argmax: Partition,
    /// Number of partitions scored; equals `S(n, k)`.
    pub evaluations: u128,
    /// Sparsest representation matrix, for the self-representation utility.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representation: Option<RationalMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Yes(Partition),
    No,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }
}

#[derive(Clone)]
struct Best {
    value: Rational,
    labels: Vec<usize>,
}

impl Best {
    /// Higher value wins; equal values keep the lexicographically smaller labels.
    fn merge(self, other: Best) -> Best {
        match self.value.cmp(&other.value) {
            std::cmp::Ordering::Greater => self,
            std::cmp::Ordering::Less => other,
            std::cmp::Ordering::Equal => {
                if other.labels < self.labels {
                    other
                } else {
                    self
                }
            }
        }
    }
}

fn scan(eval: &Evaluator<'_>, mut iter: PartitionIter) -> (Option<Best>, u128) {
    let k = iter.k();
    let mut best: Option<Best> = None;
    let mut count = 0u128;
    while iter.advance() {
        count += 1;
        let value = eval.score_labels(iter.labels(), k);
        // strict improvement only: enumeration is lexicographic, so the first
        // maximiser seen is the least one
        if best.as_ref().map_or(true, |b| value > b.value) {
            best = Some(Best { value, labels: iter.labels().to_vec() });
        }
    }
    (best, count)
}

pub fn solve_ucp(inst: &UcpDecisionInstance) -> Result<SolveResult, SolveError> {
    solve_ucp_with(inst, &SolverConfig::default())
}

pub fn solve_ucp_with(inst: &UcpDecisionInstance, config: &SolverConfig) -> Result<SolveResult, SolveError> {
    let (n, k) = (inst.n(), inst.k());
    if n > config.max_n {
        return Err(SolveError::InstanceTooLarge { n, cap: config.max_n });
    }
    let eval = inst.evaluator()?;
    let (best, evaluations) = if config.parallel && stirling2(n, k) > PARALLEL_THRESHOLD {
        feasible_prefixes(n, k, PREFIX_LEN.min(n))
            .into_par_iter()
            .map(|prefix| scan(&eval, PartitionIter::with_prefix(n, k, &prefix).expect("prefix is feasible")))
            .reduce(
                || (None, 0),
                |(a, ca), (b, cb)| {
                    let merged = match (a, b) {
                        (Some(a), Some(b)) => Some(a.merge(b)),
                        (a, b) => a.or(b),
                    };
                    (merged, ca + cb)
                },
            )
    } else {
        scan(&eval, PartitionIter::new(n, k).expect("k is validated at construction"))
    };
    let best = best.expect("k in 1..=n always admits a partition");
    let argmax = Partition::from_rgs_unchecked(best.labels, k);
    let representation = match inst.payload() {
        Payload::Data(x) => crate::exact::ssc::min_block_support(x, &argmax).map(|(_, z)| z),
        _ => None,
    };
    Ok(SolveResult { optimum: best.value, argmax, evaluations, representation })
}

/// YES with the lexicographically least optimal partition iff the optimum
/// reaches the threshold.
pub fn decide_ucp(inst: &UcpDecisionInstance) -> Result<Decision, SolveError> {
    let result = solve_ucp(inst)?;
    Ok(if &result.optimum >= inst.threshold() { Decision::Yes(result.argmax) } else { Decision::No })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Utility;
    use crate::model::{graph_metric, EuclideanInstance, GraphInstance, MetricInstance};
    use crate::utilities::SimilarityMatrix;

    fn conf_instance(g: &GraphInstance, k: usize) -> UcpDecisionInstance {
        UcpDecisionInstance::new(Payload::Metric(graph_metric(g)), Utility::Conf, k, Rational::zero()).unwrap()
    }

    #[test]
    fn triangle_examples() {
        let r = solve_ucp(&conf_instance(&GraphInstance::complete(3), 3)).unwrap();
        assert_eq!((r.optimum.clone(), r.argmax.clone(), r.evaluations), (Rational::zero(), Partition::singletons(3), 1));
        let r = solve_ucp(&conf_instance(&GraphInstance::complete(3), 2)).unwrap();
        assert_eq!(r.optimum, -1);
        assert_eq!(r.argmax.labels(), &[0, 0, 1]);
        assert_eq!(r.evaluations, 3);
        assert!(decide_ucp(&conf_instance(&GraphInstance::complete(3), 3)).unwrap().is_yes());
        assert_eq!(decide_ucp(&conf_instance(&GraphInstance::complete(3), 2)).unwrap(), Decision::No);
    }

    #[test]
    fn kmeans_wrapper() {
        let inst = UcpDecisionInstance::new(
            Payload::Euclidean(EuclideanInstance::from_line(&[0, 2])),
            Utility::Kmeans,
            1,
            Rational::zero(),
        )
        .unwrap();
        assert_eq!(solve_ucp(&inst).unwrap().optimum, -2);
    }

    #[test]
    fn cap_is_enforced() {
        let inst = conf_instance(&GraphInstance::empty(5), 2);
        let config = SolverConfig { max_n: 4, parallel: false };
        assert_eq!(solve_ucp_with(&inst, &config), Err(SolveError::InstanceTooLarge { n: 5, cap: 4 }));
    }

    #[test]
    fn parallel_and_sequential_agree() {
        // many ties: every partition of an edgeless graph scores 0
        let g = GraphInstance::new(10, [(0, 9), (1, 8), (2, 3)]).unwrap();
        for k in [2, 3, 4] {
            let inst = conf_instance(&g, k);
            let seq = solve_ucp_with(&inst, &SolverConfig { max_n: 12, parallel: false }).unwrap();
            let par = solve_ucp_with(&inst, &SolverConfig { max_n: 12, parallel: true }).unwrap();
            assert_eq!(seq, par);
            assert_eq!(seq.evaluations, stirling2(10, k));
        }
    }

    #[test]
    fn exemplar_optimum_small() {
        let m = MetricInstance::from_i64_rows(&[&[0, 1, 3], &[1, 0, 2], &[3, 2, 0]]).unwrap();
        let s = SimilarityMatrix::negated_metric(&m);
        let inst = UcpDecisionInstance::new(Payload::Similarity(s), Utility::Exemplar, 1, Rational::zero()).unwrap();
        assert_eq!(solve_ucp(&inst).unwrap().optimum, -3);
    }
}
