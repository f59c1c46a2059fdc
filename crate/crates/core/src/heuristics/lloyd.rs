//! Lloyd's k-means iteration in exact arithmetic.

use super::{check_k, HeuristicError, HeuristicRun, Method};
use crate::gen::{distinct_indices, rng};
use crate::model::EuclideanInstance;
use crate::partition::Partition;
use crate::rational::Rational;
use crate::utilities::u_kmeans;

/// Iteration cap; a partition always repeats long before this on the sizes
/// the oracle can check.
pub const LLOYD_MAX_ITERS: usize = 1000;

fn squared_distance(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| (x - y).square()).sum()
}

/// Nearest center for every point; ties go to the lower center index.
fn assign(points: &EuclideanInstance, centers: &[Vec<Rational>]) -> Vec<usize> {
    (0..points.n())
        .map(|i| {
            let mut best = 0;
            let mut best_d = squared_distance(points.point(i), &centers[0]);
            for (c, center) in centers.iter().enumerate().skip(1) {
                let d = squared_distance(points.point(i), center);
                if d < best_d {
                    best = c;
                    best_d = d;
                }
            }
            best
        })
        .collect()
}

/// Fills each empty cluster with the point farthest from its own center,
/// taken from a cluster that keeps at least one point.
fn repair_empty(points: &EuclideanInstance, centers: &mut [Vec<Rational>], labels: &mut [usize]) {
    let k = centers.len();
    loop {
        let mut sizes = vec![0usize; k];
        for &l in labels.iter() {
            sizes[l] += 1;
        }
        let Some(empty) = sizes.iter().position(|&s| s == 0) else {
            return;
        };
        let mut donor: Option<(usize, Rational)> = None;
        for (i, &l) in labels.iter().enumerate() {
            if sizes[l] > 1 {
                let d = squared_distance(points.point(i), &centers[l]);
                if donor.as_ref().map_or(true, |(_, best)| d > *best) {
                    donor = Some((i, d));
                }
            }
        }
        let (i, _) = donor.expect("k <= n leaves a cluster with two points");
        labels[i] = empty;
        centers[empty] = points.point(i).to_vec();
    }
}

fn centroids(points: &EuclideanInstance, labels: &[usize], k: usize) -> Vec<Vec<Rational>> {
    let mut sums = vec![vec![Rational::zero(); points.dim()]; k];
    let mut counts = vec![0usize; k];
    for (i, &l) in labels.iter().enumerate() {
        counts[l] += 1;
        for (acc, x) in sums[l].iter_mut().zip(points.point(i)) {
            *acc += x;
        }
    }
    sums.into_iter()
        .zip(counts)
        .map(|(sum, c)| {
            let inv = Rational::from(c).recip();
            sum.into_iter().map(|s| s * &inv).collect()
        })
        .collect()
}

/// Lloyd from `k` distinct data points drawn with `seed`.
pub fn lloyd(points: &EuclideanInstance, k: usize, seed: u64) -> Result<HeuristicRun, HeuristicError> {
    check_k(k, points.n())?;
    let start = distinct_indices(&mut rng(seed), points.n(), k);
    let mut run = lloyd_from_centers(points, &start)?;
    run.seed = Some(seed);
    Ok(run)
}

/// Lloyd from the data points at `start` as initial centers. Stops when the
/// assignment repeats.
pub fn lloyd_from_centers(points: &EuclideanInstance, start: &[usize]) -> Result<HeuristicRun, HeuristicError> {
    let k = start.len();
    check_k(k, points.n())?;
    if let Some(&bad) = start.iter().find(|&&i| i >= points.n()) {
        return Err(HeuristicError::InvalidParameter(format!("initial center {} is not a point", bad + 1)));
    }
    let mut centers: Vec<Vec<Rational>> = start.iter().map(|&i| points.point(i).to_vec()).collect();
    let mut labels: Vec<usize> = Vec::new();
    let mut trajectory = Vec::new();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < LLOYD_MAX_ITERS {
        let mut next = assign(points, &centers);
        repair_empty(points, &mut centers, &mut next);
        iterations += 1;
        if next == labels {
            converged = true;
            break;
        }
        labels = next;
        centers = centroids(points, &labels, k);
        let p = Partition::canonicalize(&labels)?;
        trajectory.push((-u_kmeans(points, &p).expect("sizes match")).to_f64());
    }
    let partition = Partition::canonicalize(&labels)?;
    let value = u_kmeans(points, &partition).expect("sizes match");
    Ok(HeuristicRun {
        method: Method::Lloyd,
        seed: None,
        iterations,
        partition,
        value,
        trajectory,
        converged,
        exemplars: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points() {
        let pts = EuclideanInstance::from_line(&[0, 2]);
        for seed in 0..5 {
            assert_eq!(lloyd(&pts, 2, seed).unwrap().value, 0);
            assert_eq!(lloyd(&pts, 1, seed).unwrap().value, -2);
        }
    }

    #[test]
    fn stuck_start_is_suboptimal() {
        let pts = EuclideanInstance::from_line(&[0, 1, 10, 11, 20, 21]);
        let run = lloyd_from_centers(&pts, &[0, 1, 2]).unwrap();
        assert!(run.converged);
        assert_eq!(run.value, -101);
        assert_eq!(run.partition.to_string(), "{1}|{2}|{3,4,5,6}");
        let good = lloyd_from_centers(&pts, &[0, 2, 4]).unwrap();
        assert_eq!(good.value, Rational::ratio(-3, 2));
    }

    #[test]
    fn empty_cluster_is_repaired() {
        // duplicate centers leave the second one empty
        let pts = EuclideanInstance::from_line(&[0, 0, 5]);
        let run = lloyd_from_centers(&pts, &[0, 1]).unwrap();
        assert_eq!(run.partition.k(), 2);
        assert_eq!(run.value, 0);
    }

    #[test]
    fn trajectory_never_increases() {
        let pts = EuclideanInstance::from_line(&[0, 3, 4, 9, 12, 13, 20]);
        for seed in 0..20 {
            let run = lloyd(&pts, 3, seed).unwrap();
            assert!(run.trajectory.windows(2).all(|w| w[1] <= w[0]), "{:?}", run.trajectory);
        }
    }
}
