//! Gaussian mean shift: fixed-point ascent of the kernel density estimate from
//! every data point.

use serde::{Deserialize, Serialize};

use super::HeuristicError;
use crate::model::EuclideanInstance;
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanShiftConfig {
    pub bandwidth: f64,
    /// Stop once a step moves less than this.
    pub tol: f64,
    pub max_iters: usize,
}

impl MeanShiftConfig {
    pub fn new(bandwidth: f64) -> Self {
        MeanShiftConfig { bandwidth, tol: 1e-9, max_iters: 1000 }
    }

    /// Modes closer than this are merged.
    pub fn merge_radius(&self) -> f64 {
        1e-3 * self.bandwidth
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeanShiftRun {
    pub modes: Vec<Vec<f64>>,
    /// Points grouped by the mode they climb to.
    pub partition: Partition,
    /// Density along each point's trajectory.
    pub densities: Vec<Vec<f64>>,
    pub iterations: Vec<usize>,
    /// Trajectories that hit the iteration cap before the step fell below `tol`.
    pub max_iters_exceeded: Vec<usize>,
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Unnormalised Gaussian density `(1/n) Σ exp(-‖x - x_i‖² / 2h²)`.
pub fn gaussian_kde(data: &[Vec<f64>], x: &[f64], bandwidth: f64) -> f64 {
    let scale = 2.0 * bandwidth * bandwidth;
    data.iter().map(|p| (-squared_distance(x, p) / scale).exp()).sum::<f64>() / data.len() as f64
}

/// Weighted mean of the data under Gaussian weights centred at `x`. Weights
/// are shifted by the nearest point so they never all underflow.
fn shift(data: &[Vec<f64>], x: &[f64], bandwidth: f64) -> Vec<f64> {
    let scale = 2.0 * bandwidth * bandwidth;
    let d: Vec<f64> = data.iter().map(|p| squared_distance(x, p)).collect();
    let nearest = d.iter().copied().fold(f64::INFINITY, f64::min);
    let mut total = 0.0;
    let mut acc = vec![0.0; x.len()];
    for (p, di) in data.iter().zip(&d) {
        let w = (-(di - nearest) / scale).exp();
        total += w;
        for (a, v) in acc.iter_mut().zip(p) {
            *a += w * v;
        }
    }
    acc.into_iter().map(|a| a / total).collect()
}

pub fn mean_shift(points: &EuclideanInstance, config: &MeanShiftConfig) -> Result<MeanShiftRun, HeuristicError> {
    if points.n() == 0 {
        return Err(HeuristicError::Empty);
    }
    if !(config.bandwidth > 0.0 && config.bandwidth.is_finite()) {
        return Err(HeuristicError::InvalidParameter(format!("bandwidth {} must be positive", config.bandwidth)));
    }
    let data = points.to_f64();
    let mut modes: Vec<Vec<f64>> = Vec::new();
    let mut labels = Vec::with_capacity(data.len());
    let mut densities = Vec::with_capacity(data.len());
    let mut iterations = Vec::with_capacity(data.len());
    let mut max_iters_exceeded = Vec::new();
    let radius_sq = config.merge_radius() * config.merge_radius();
    for (index, start) in data.iter().enumerate() {
        let mut x = start.clone();
        let mut trace = vec![gaussian_kde(&data, &x, config.bandwidth)];
        let mut steps = 0;
        let mut settled = false;
        while steps < config.max_iters {
            let next = shift(&data, &x, config.bandwidth);
            let step = squared_distance(&next, &x).sqrt();
            x = next;
            steps += 1;
            trace.push(gaussian_kde(&data, &x, config.bandwidth));
            if step < config.tol {
                settled = true;
                break;
            }
        }
        if !settled {
            max_iters_exceeded.push(index);
        }
        let label = match modes.iter().position(|m| squared_distance(m, &x) <= radius_sq) {
            Some(l) => l,
            None => {
                modes.push(x);
                modes.len() - 1
            }
        };
        labels.push(label);
        densities.push(trace);
        iterations.push(steps);
    }
    Ok(MeanShiftRun {
        modes,
        partition: Partition::canonicalize(&labels)?,
        densities,
        iterations,
        max_iters_exceeded,
    })
}
