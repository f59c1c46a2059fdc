//! Recorded instances on which each heuristic ends strictly short of the
//! exact optimum. Each one re-runs deterministically.

use super::ApConfig;
use crate::model::{graph_metric, EuclideanInstance, GraphInstance, MetricInstance};
use crate::rational::Rational;
use crate::utilities::SimilarityMatrix;

/// Three well-separated pairs on a line. Seed 3 draws the two points of the
/// first pair as initial centers and Lloyd settles at cost 101 instead of 3/2.
pub fn lloyd_fixture() -> (EuclideanInstance, usize, u64) {
    (EuclideanInstance::from_line(&[0, 1, 10, 11, 20, 21]), 3, 3)
}

/// Path 3-1-2-4 (vertices numbered from 1) with `k = 2`. Every edge is a
/// closest pair; greedy merges {1,2} first, after which every bipartition has
/// a block of diameter 2, while {1,3}|{2,4} has diameter 1.
pub fn linkage_fixture() -> (GraphInstance, MetricInstance, usize) {
    let g = GraphInstance::new(4, [(2, 0), (0, 1), (1, 3)]).expect("valid edges");
    let m = graph_metric(&g);
    (g, m, 2)
}

/// Points 1, 13, 21, 27 on a line with similarity minus squared distance and
/// self-similarity -50. Damped messages settle on exemplars {1, 13}.
pub fn ap_fixture() -> (SimilarityMatrix, ApConfig) {
    let xs = [1i64, 13, 21, 27];
    let rows = xs
        .iter()
        .map(|a| xs.iter().map(|b| if a == b { Rational::from(-50i64) } else { Rational::from(-(a - b) * (a - b)) }).collect())
        .collect();
    let s = SimilarityMatrix::new(rows).expect("square");
    (s, ApConfig { damping: 0.5, ..ApConfig::default() })
}
