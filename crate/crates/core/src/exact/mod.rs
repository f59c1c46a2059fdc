//! Exhaustive oracles: UCP by partition enumeration, and independent solvers
//! for each source problem of the reductions.

pub mod oracles;
pub mod solver;
pub mod ssc;
pub mod verify;

pub use solver::{decide_ucp, solve_ucp, solve_ucp_with, Decision, SolveError, SolveResult, SolverConfig};
pub use verify::{verify_reduction, VerificationReport, VerifyError};

/// All `r`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut current: Vec<usize> = (0..r).collect();
    loop {
        out.push(current.clone());
        let Some(pos) = (0..r).rev().find(|&i| current[i] < n - r + i) else {
            return out;
        };
        current[pos] += 1;
        for i in (pos + 1)..r {
            current[i] = current[i - 1] + 1;
        }
    }
}
