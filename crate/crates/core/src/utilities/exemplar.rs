//! Exemplar utilities over a similarity matrix (mean-shift modes, affinity
//! propagation, k-medoids).

use serde::{Deserialize, Serialize};

use super::UtilityError;
use crate::model::MetricInstance;
use crate::partition::{blocks_of, Partition};
use crate::rational::Rational;

/// Square matrix of similarities `s(i, j)`: how well `j` represents `i`. Not
/// required to be symmetric.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimilarityMatrix {
    n: usize,
    s: Vec<Rational>,
}

impl SimilarityMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self, UtilityError> {
        let n = rows.len();
        if let Some((r, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != n) {
            return Err(UtilityError::DimensionMismatch(format!(
                "similarity row {} has {} entries, expected {n}",
                r + 1,
                row.len()
            )));
        }
        Ok(SimilarityMatrix { n, s: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, UtilityError> {
        Self::new(rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(v)).collect()).collect())
    }

    /// `s(i, j) = -d(i, j)`.
    pub fn negated_metric(m: &MetricInstance) -> Self {
        let n = m.n();
        SimilarityMatrix { n, s: (0..n * n).map(|idx| -m.d(idx / n, idx % n)).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self, i: usize, j: usize) -> &Rational {
        &self.s[i * self.n + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.n).map(|i| self.s[i * self.n..(i + 1) * self.n].to_vec()).collect()
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.s(i, j).to_f64()).collect()).collect()
    }
}

impl Serialize for SimilarityMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SimilarityMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Rational>>::deserialize(deserializer)?;
        SimilarityMatrix::new(rows).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn exemplar_score(s: &SimilarityMatrix, labels: &[usize], k: usize) -> Rational {
    let mut total = Rational::zero();
    for block in blocks_of(labels, k) {
        let best = block
            .iter()
            .map(|&e| block.iter().map(|&i| s.s(i, e)).sum::<Rational>())
            .max()
            .expect("blocks are nonempty");
        total += best;
    }
    total
}

/// Sum over blocks of the best in-block exemplar's total similarity.
pub fn u_exemplar(s: &SimilarityMatrix, p: &Partition) -> Result<Rational, UtilityError> {
    p.check_size(s.n())?;
    Ok(exemplar_score(s, p.labels(), p.k()))
}

/// `Σ s(i, a(i))` for a consistent assignment: whenever `a(i) = j`, `j` must
/// choose itself.
pub fn ap_objective(s: &SimilarityMatrix, assignment: &[usize]) -> Result<Rational, UtilityError> {
    if assignment.len() != s.n() {
        return Err(UtilityError::DimensionMismatch(format!(
            "assignment has {} entries, expected {}",
            assignment.len(),
            s.n()
        )));
    }
    for (i, &j) in assignment.iter().enumerate() {
        if j >= s.n() {
            return Err(UtilityError::AssignmentOutOfRange(j));
        }
        if assignment[j] != j {
            return Err(UtilityError::ConsistencyViolation { i, j });
        }
    }
    Ok(assignment.iter().enumerate().map(|(i, &j)| s.s(i, j)).sum())
}

/// Partition whose blocks are the preimages of the exemplars.
pub fn assignment_partition(assignment: &[usize]) -> Result<Partition, UtilityError> {
    Ok(Partition::canonicalize(assignment)?)
}

/// Exemplar-set objective `Σ_{e∈E} s(e,e) + Σ_{i∉E} max_{e∈E} s(i,e)`: the
/// best consistent assignment whose exemplars are exactly `exemplars`.
pub fn exemplar_set_value(s: &SimilarityMatrix, exemplars: &[usize]) -> Rational {
    assert!(!exemplars.is_empty(), "exemplar set must be nonempty");
    (0..s.n())
        .map(|i| {
            if exemplars.contains(&i) {
                s.s(i, i).clone()
            } else {
                exemplars.iter().map(|&e| s.s(i, e)).max().expect("nonempty").clone()
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_similarity(xs: &[i64]) -> SimilarityMatrix {
        let rows: Vec<Vec<Rational>> =
            xs.iter().map(|a| xs.iter().map(|b| Rational::from_integer(-(a - b).abs())).collect()).collect();
        SimilarityMatrix::new(rows).unwrap()
    }

    #[test]
    fn exemplar_examples() {
        let s = line_similarity(&[0, 1, 3]);
        assert_eq!(u_exemplar(&s, &Partition::whole(3)).unwrap(), -3);
        assert_eq!(u_exemplar(&s, &Partition::singletons(3)).unwrap(), 0);
        let p = Partition::canonicalize(&[0, 0, 1]).unwrap();
        assert_eq!(u_exemplar(&s, &p).unwrap(), -1);
    }

    #[test]
    fn ap_objective_examples() {
        let s = SimilarityMatrix::from_i64_rows(&[&[-1, -4], &[-2, -3]]).unwrap();
        assert_eq!(ap_objective(&s, &[0, 1]).unwrap(), -4);
        assert_eq!(ap_objective(&s, &[1, 0]), Err(UtilityError::ConsistencyViolation { i: 0, j: 1 }));
        assert_eq!(ap_objective(&s, &[1, 1]).unwrap(), -7);
    }

    #[test]
    fn exemplar_set_value_is_best_consistent_assignment() {
        let s = line_similarity(&[0, 1, 3]);
        assert_eq!(exemplar_set_value(&s, &[1]), -3);
        assert_eq!(exemplar_set_value(&s, &[0, 2]), -1);
    }
}
