//! Practical clustering heuristics, run against the exact oracles to measure
//! how far from optimal they end.

mod ap;
pub mod fixtures;
mod gap;
mod linkage;
mod lloyd;
mod mean_shift;
mod pam;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use ap::{ap_messages, ApConfig};
pub use gap::{gap_rows, linkage_optimum, summarize, GapError, GapRow, GapSummary};
pub use linkage::{greedy_complete_linkage, max_diameter};
pub use lloyd::{lloyd, lloyd_from_centers, LLOYD_MAX_ITERS};
pub use mean_shift::{gaussian_kde, mean_shift, MeanShiftConfig, MeanShiftRun};
pub use pam::pam_swap;

use crate::partition::{Partition, PartitionError};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Lloyd,
    Linkage,
    Ap,
    MeanShift,
    Pam,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Lloyd => "lloyd",
            Method::Linkage => "linkage",
            Method::Ap => "ap",
            Method::MeanShift => "meanshift",
            Method::Pam => "pam",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lloyd" => Ok(Method::Lloyd),
            "linkage" => Ok(Method::Linkage),
            "ap" => Ok(Method::Ap),
            "meanshift" => Ok(Method::MeanShift),
            "pam" => Ok(Method::Pam),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HeuristicError {
    #[error("k={k} is outside 1..={n}")]
    InvalidK { k: usize, n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("instance has no points")]
    Empty,
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

pub(crate) fn check_k(k: usize, n: usize) -> Result<(), HeuristicError> {
    if n == 0 {
        return Err(HeuristicError::Empty);
    }
    if k == 0 || k > n {
        return Err(HeuristicError::InvalidK { k, n });
    }
    Ok(())
}

/// Outcome of one heuristic run. `value` is the exact objective of the final
/// partition in maximisation form, comparable with the oracle optimum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeuristicRun {
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub iterations: usize,
    pub partition: Partition,
    pub value: Rational,
    /// Each method's own objective after every iteration: k-means cost for
    /// Lloyd, largest diameter for linkage, the assignment objective for AP and
    /// the exemplar-set objective for PAM.
    pub trajectory: Vec<f64>,
    pub converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exemplars: Option<Vec<usize>>,
}
