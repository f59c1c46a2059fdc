//! UCP decision instances: a payload, a utility with its parameters, a block
//! count `k` and a threshold `T`. The question is whether some `k`-block
//! partition scores at least `T`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::ssc::min_block_support;
use crate::linalg::RationalMatrix;
use crate::model::{EuclideanInstance, MetricInstance};
use crate::partition::Partition;
use crate::rational::Rational;
use crate::utilities::{
    bis_score, birch_score, check_cf_dims, cl_score, conf_score, dens_score, exemplar_score, kmeans_score,
    med_score, opt_candidate_scales, point_squares, CfTriple, SimilarityMatrix, UnitAdjacency, UtilityError,
};

/// Input data a utility is evaluated on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "body", rename_all = "snake_case")]
pub enum Payload {
    /// Distance matrix.
    Metric(MetricInstance),
    /// Point coordinates, one row per point.
    Euclidean(EuclideanInstance),
    /// Clustering features, one per microcluster.
    Cf(Vec<CfTriple>),
    Similarity(SimilarityMatrix),
    /// Data matrix whose columns are the points.
    Data(RationalMatrix),
}

impl Payload {
    /// Number of items being partitioned.
    pub fn n(&self) -> usize {
        match self {
            Payload::Metric(m) => m.n(),
            Payload::Euclidean(e) => e.n(),
            Payload::Cf(cfs) => cfs.len(),
            Payload::Similarity(s) => s.n(),
            Payload::Data(x) => x.cols(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Metric(_) => "metric",
            Payload::Euclidean(_) => "euclidean",
            Payload::Cf(_) => "cf",
            Payload::Similarity(_) => "similarity",
            Payload::Data(_) => "data",
        }
    }
}

/// Utility tag plus parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum Utility {
    /// Minus the number of same-block unit-distance pairs.
    Conf,
    /// Minus the k-median (medoid) cost.
    Med,
    /// Minus the k-means cost.
    Kmeans,
    /// Density of a designated block in the `eps`-graph.
    Dens { eps: Rational, size: usize, delta: Rational },
    /// Best density score over scales up to `eps_max`, with density
    /// threshold `2 * min_edges / size`.
    Opt { eps_max: Rational, size: usize, min_edges: usize },
    /// Minus the cut of a balanced bisection of the `eps`-graph.
    Bis { eps: Rational },
    /// Minus the merged sum of squares of clustering features.
    Birch,
    /// Zero when every block has diameter at most `diameter`.
    Cl { diameter: Rational },
    /// Best one-exemplar-per-block similarity.
    Exemplar,
    /// Minus the fewest nonzeros of a block-supported self-representation.
    Ssc,
    /// Gaussian-mixture likelihood; only certificates can be checked.
    Gmm,
}

impl Utility {
    pub fn name(&self) -> &'static str {
        match self {
            Utility::Conf => "conf",
            Utility::Med => "med",
            Utility::Kmeans => "kmeans",
            Utility::Dens { .. } => "dens",
            Utility::Opt { .. } => "opt",
            Utility::Bis { .. } => "bis",
            Utility::Birch => "birch",
            Utility::Cl { .. } => "cl",
            Utility::Exemplar => "exemplar",
            Utility::Ssc => "ssc",
            Utility::Gmm => "gmm",
        }
    }

    fn payload_kind(&self) -> &'static str {
        match self {
            Utility::Conf
            | Utility::Med
            | Utility::Dens { .. }
            | Utility::Opt { .. }
            | Utility::Bis { .. }
            | Utility::Cl { .. } => "metric",
            Utility::Kmeans | Utility::Gmm => "euclidean",
            Utility::Birch => "cf",
            Utility::Exemplar => "similarity",
            Utility::Ssc => "data",
        }
    }
}

impl fmt::Display for Utility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Utility::Dens { eps, size, delta } => write!(f, "dens(eps={eps}, size={size}, delta={delta})"),
            Utility::Opt { eps_max, size, min_edges } => {
                write!(f, "opt(eps_max={eps_max}, size={size}, min_edges={min_edges})")
            }
            Utility::Bis { eps } => write!(f, "bis(eps={eps})"),
            Utility::Cl { diameter } => write!(f, "cl(diameter={diameter})"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstanceError {
    #[error("utility `{utility}` needs a {expected} payload, got {found}")]
    IncompatiblePayload { utility: &'static str, expected: &'static str, found: &'static str },
    #[error("k={k} is outside 1..={n}")]
    InvalidK { k: usize, n: usize },
    #[error("utility `{utility}` needs k={expected}, got k={found}")]
    WrongK { utility: &'static str, expected: usize, found: usize },
    #[error("invalid utility parameter: {0}")]
    InvalidParameter(String),
    #[error("utility `{0}` cannot be evaluated on partitions; only certificates can be checked")]
    UnsupportedUtility(&'static str),
    #[error(transparent)]
    Utility(#[from] UtilityError),
}

/// A validated UCP decision instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UcpDecisionInstance {
    payload: Payload,
    utility: Utility,
    k: usize,
    threshold: Rational,
}

impl UcpDecisionInstance {
    pub fn new(payload: Payload, utility: Utility, k: usize, threshold: Rational) -> Result<Self, InstanceError> {
        if utility.payload_kind() != payload.kind() {
            return Err(InstanceError::IncompatiblePayload {
                utility: utility.name(),
                expected: utility.payload_kind(),
                found: payload.kind(),
            });
        }
        let n = payload.n();
        if k == 0 || k > n {
            return Err(InstanceError::InvalidK { k, n });
        }
        let bad = |msg: &str| Err(InstanceError::InvalidParameter(msg.to_string()));
        match &utility {
            Utility::Dens { eps, size, delta } => {
                if !eps.is_positive() {
                    return bad("eps must be positive");
                }
                if *size == 0 || delta.is_negative() {
                    return bad("size must be at least 1 and delta nonnegative");
                }
            }
            Utility::Opt { eps_max, size, .. } => {
                if !eps_max.is_positive() || *size == 0 {
                    return bad("eps_max must be positive and size at least 1");
                }
            }
            Utility::Bis { eps } if !eps.is_positive() => return bad("eps must be positive"),
            Utility::Cl { diameter } if diameter.is_negative() => return bad("diameter must be nonnegative"),
            _ => {}
        }
        if matches!(utility, Utility::Dens { .. } | Utility::Opt { .. } | Utility::Bis { .. }) && k != 2 {
            return Err(InstanceError::WrongK { utility: utility.name(), expected: 2, found: k });
        }
        if let Payload::Cf(cfs) = &payload {
            check_cf_dims(cfs)?;
        }
        Ok(UcpDecisionInstance { payload, utility, k, threshold })
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn utility(&self) -> &Utility {
        &self.utility
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.payload.n()
    }

    pub fn threshold(&self) -> &Rational {
        &self.threshold
    }

    pub fn with_threshold(&self, threshold: Rational) -> Self {
        UcpDecisionInstance { threshold, ..self.clone() }
    }

    pub fn metric(&self) -> Option<&MetricInstance> {
        match &self.payload {
            Payload::Metric(m) => Some(m),
            _ => None,
        }
    }

    pub fn euclidean(&self) -> Option<&EuclideanInstance> {
        match &self.payload {
            Payload::Euclidean(e) => Some(e),
            _ => None,
        }
    }

    pub fn similarity(&self) -> Option<&SimilarityMatrix> {
        match &self.payload {
            Payload::Similarity(s) => Some(s),
            _ => None,
        }
    }

    pub fn data(&self) -> Option<&RationalMatrix> {
        match &self.payload {
            Payload::Data(x) => Some(x),
            _ => None,
        }
    }

    /// Precomputes whatever the utility needs for repeated evaluation.
    pub fn evaluator(&self) -> Result<Evaluator<'_>, InstanceError> {
        let prepared = match (&self.utility, &self.payload) {
            (Utility::Conf, Payload::Metric(m)) => Prepared::Conf(UnitAdjacency::unit_pairs(m)),
            (Utility::Med, Payload::Metric(m)) => Prepared::Med(m),
            (Utility::Kmeans, Payload::Euclidean(e)) => Prepared::Kmeans(e, point_squares(e)),
            (Utility::Dens { eps, size, delta }, Payload::Metric(m)) => {
                Prepared::Dens(vec![UnitAdjacency::within(m, eps)], *size, delta.clone())
            }
            (Utility::Opt { eps_max, size, min_edges }, Payload::Metric(m)) => Prepared::Dens(
                opt_candidate_scales(m, eps_max).iter().map(|eps| UnitAdjacency::within(m, eps)).collect(),
                *size,
                Rational::ratio(2 * *min_edges as i64, *size as i64),
            ),
            (Utility::Bis { eps }, Payload::Metric(m)) => Prepared::Bis(UnitAdjacency::within(m, eps)),
            (Utility::Birch, Payload::Cf(cfs)) => Prepared::Birch(cfs, check_cf_dims(cfs)?),
            (Utility::Cl { diameter }, Payload::Metric(m)) => Prepared::Cl(m, diameter.clone()),
            (Utility::Exemplar, Payload::Similarity(s)) => Prepared::Exemplar(s),
            (Utility::Ssc, Payload::Data(x)) => Prepared::Ssc(x),
            (Utility::Gmm, _) => return Err(InstanceError::UnsupportedUtility("gmm")),
            _ => unreachable!("payload compatibility is checked at construction"),
        };
        Ok(Evaluator { n: self.n(), prepared })
    }

    /// Utility of one partition.
    pub fn evaluate(&self, p: &Partition) -> Result<Rational, InstanceError> {
        self.evaluator()?.evaluate(p)
    }
}

enum Prepared<'a> {
    Conf(UnitAdjacency),
    Med(&'a MetricInstance),
    Kmeans(&'a EuclideanInstance, Vec<Rational>),
    /// One adjacency per scale; a single scale for the plain density utility.
    Dens(Vec<UnitAdjacency>, usize, Rational),
    Bis(UnitAdjacency),
    Birch(&'a [CfTriple], usize),
    Cl(&'a MetricInstance, Rational),
    Exemplar(&'a SimilarityMatrix),
    Ssc(&'a RationalMatrix),
}

/// Utility evaluator with per-instance precomputation.
pub struct Evaluator<'a> {
    n: usize,
    prepared: Prepared<'a>,
}

impl Evaluator<'_> {
    /// Scores restricted-growth labels with `k` blocks; no validation.
    pub fn score_labels(&self, labels: &[usize], k: usize) -> Rational {
        match &self.prepared {
            Prepared::Conf(unit) => conf_score(unit, labels),
            Prepared::Med(m) => med_score(m, labels, k),
            Prepared::Kmeans(e, squares) => kmeans_score(e, squares, labels, k),
            Prepared::Dens(scales, size, delta) => scales
                .iter()
                .map(|adj| dens_score(adj, labels, *size, delta))
                .max()
                .expect("at least one scale"),
            Prepared::Bis(adj) => bis_score(adj, labels),
            Prepared::Birch(cfs, dim) => birch_score(cfs, *dim, labels, k),
            Prepared::Cl(m, diameter) => cl_score(m, labels, diameter),
            Prepared::Exemplar(s) => exemplar_score(s, labels, k),
            Prepared::Ssc(x) => {
                let p = Partition::from_rgs_unchecked(labels.to_vec(), k);
                ssc_score(x, &p)
            }
        }
    }

    pub fn evaluate(&self, p: &Partition) -> Result<Rational, InstanceError> {
        p.check_size(self.n).map_err(UtilityError::from)?;
        if matches!(self.prepared, Prepared::Dens(..) | Prepared::Bis(_)) && p.k() != 2 {
            return Err(UtilityError::WrongK { expected: 2, found: p.k() }.into());
        }
        Ok(self.score_labels(p.labels(), p.k()))
    }
}

/// `-OPT` for the block-supported self-representation problem, or `-n³` when
/// no representation exists.
pub fn ssc_score(x: &RationalMatrix, p: &Partition) -> Rational {
    match min_block_support(x, p) {
        Some((count, _)) => -Rational::from(count),
        None => -Rational::from(x.cols().pow(3)),
    }
}

impl fmt::Display for UcpDecisionInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} k={} utility={} threshold={} payload={}",
            self.n(),
            self.k,
            self.utility,
            self.threshold,
            self.payload.kind()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{graph_metric, GraphInstance};

    #[test]
    fn validation() {
        let m = graph_metric(&GraphInstance::complete(3));
        assert!(matches!(
            UcpDecisionInstance::new(Payload::Metric(m.clone()), Utility::Kmeans, 1, Rational::zero()),
            Err(InstanceError::IncompatiblePayload { .. })
        ));
        assert!(matches!(
            UcpDecisionInstance::new(Payload::Metric(m.clone()), Utility::Conf, 4, Rational::zero()),
            Err(InstanceError::InvalidK { .. })
        ));
        assert!(matches!(
            UcpDecisionInstance::new(Payload::Metric(m.clone()), Utility::Bis { eps: Rational::one() }, 1, Rational::zero()),
            Err(InstanceError::WrongK { .. })
        ));
        assert!(matches!(
            UcpDecisionInstance::new(Payload::Metric(m), Utility::Bis { eps: Rational::zero() }, 2, Rational::zero()),
            Err(InstanceError::InvalidParameter(_))
        ));
    }

    #[test]
    fn gmm_is_unsupported_for_partition_search() {
        let e = EuclideanInstance::from_line(&[0, 1]);
        let inst = UcpDecisionInstance::new(Payload::Euclidean(e), Utility::Gmm, 1, Rational::zero()).unwrap();
        assert_eq!(inst.evaluate(&Partition::whole(2)), Err(InstanceError::UnsupportedUtility("gmm")));
    }

    #[test]
    fn json_shape() {
        let m = graph_metric(&GraphInstance::path(2));
        let inst = UcpDecisionInstance::new(
            Payload::Metric(m),
            Utility::Dens { eps: Rational::one(), size: 1, delta: Rational::ratio(1, 2) },
            2,
            Rational::from_integer(1),
        )
        .unwrap();
        let v = serde_json::to_value(&inst).unwrap();
        assert_eq!(v["payload"]["kind"], "metric");
        assert_eq!(v["payload"]["body"][0][1], "1");
        assert_eq!(v["utility"]["tag"], "dens");
        assert_eq!(v["utility"]["delta"], "1/2");
        assert_eq!(v["threshold"], "1");
    }
}
