//! PAM-style swap search for k exemplars.

use super::{check_k, HeuristicError, HeuristicRun, Method};
use crate::gen::{distinct_indices, rng};
use crate::partition::Partition;
use crate::rational::Rational;
use crate::utilities::{exemplar_set_value, SimilarityMatrix};

/// Non-exemplars join their most similar exemplar (lowest index on ties).
fn induced_labels(s: &SimilarityMatrix, exemplars: &[usize]) -> Vec<usize> {
    (0..s.n())
        .map(|i| {
            if let Some(pos) = exemplars.iter().position(|&e| e == i) {
                return pos;
            }
            let mut best = 0;
            for (pos, &e) in exemplars.iter().enumerate().skip(1) {
                if s.s(i, e) > s.s(i, exemplars[best]) {
                    best = pos;
                }
            }
            best
        })
        .collect()
}

/// Best-improvement single swaps from `k` exemplars drawn with `seed`, until
/// no swap improves the exemplar-set objective. Ties go to the first swap in
/// (exemplar position, candidate index) order.
pub fn pam_swap(s: &SimilarityMatrix, k: usize, seed: u64) -> Result<HeuristicRun, HeuristicError> {
    check_k(k, s.n())?;
    let mut exemplars = distinct_indices(&mut rng(seed), s.n(), k);
    exemplars.sort_unstable();
    let mut value = exemplar_set_value(s, &exemplars);
    let mut trajectory = vec![value.to_f64()];
    loop {
        let mut best: Option<(Rational, Vec<usize>)> = None;
        for pos in 0..k {
            for candidate in (0..s.n()).filter(|c| !exemplars.contains(c)) {
                let mut swapped = exemplars.clone();
                swapped[pos] = candidate;
                swapped.sort_unstable();
                let v = exemplar_set_value(s, &swapped);
                let threshold = best.as_ref().map_or(&value, |(bv, _)| bv);
                if v > *threshold {
                    best = Some((v, swapped));
                }
            }
        }
        match best {
            Some((v, swapped)) => {
                value = v;
                exemplars = swapped;
                trajectory.push(value.to_f64());
            }
            None => break,
        }
    }
    let partition = Partition::canonicalize(&induced_labels(s, &exemplars))?;
    Ok(HeuristicRun {
        method: Method::Pam,
        seed: Some(seed),
        iterations: trajectory.len() - 1,
        partition,
        value,
        trajectory,
        converged: true,
        exemplars: Some(exemplars),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn line(xs: &[i64]) -> SimilarityMatrix {
        let rows: Vec<Vec<Rational>> =
            xs.iter().map(|a| xs.iter().map(|b| Rational::from_integer(-(a - b).abs())).collect()).collect();
        SimilarityMatrix::new(rows).unwrap()
    }

    #[test]
    fn all_points_as_exemplars() {
        let s = SimilarityMatrix::from_i64_rows(&[&[-1, -4], &[-3, -2]]).unwrap();
        let run = pam_swap(&s, 2, 0).unwrap();
        assert_eq!(run.value, -3);
        assert_eq!(run.exemplars, Some(vec![0, 1]));
    }

    #[test]
    fn line_median() {
        for seed in 0..6 {
            let run = pam_swap(&line(&[0, 1, 3]), 1, seed).unwrap();
            assert_eq!(run.exemplars, Some(vec![1]));
            assert_eq!(run.value, -3);
            assert!(run.trajectory.windows(2).all(|w| w[1] > w[0]));
        }
    }
}
