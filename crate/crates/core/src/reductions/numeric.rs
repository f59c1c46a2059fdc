//! Reductions between numeric problems: k-means, facility location, sparse
//! solutions and k-median.

use super::{BackMap, L0Instance, ReductionError, ReductionOutput, UflInstance};
use crate::instance::{Payload, UcpDecisionInstance, Utility};
use crate::linalg::RationalMatrix;
use crate::model::{EuclideanInstance, MetricInstance};
use crate::rational::Rational;
use crate::utilities::{CfTriple, SimilarityMatrix};

/// k-means cost at most `budget`: one singleton CF per point, threshold
/// `-budget`. BIRCH's final-stage cost on singleton CFs equals the k-means cost.
pub fn reduce_kmeans_to_birch(
    points: &EuclideanInstance,
    k: usize,
    budget: &Rational,
) -> Result<ReductionOutput, ReductionError> {
    let cfs: Vec<CfTriple> = points.points().iter().map(|x| CfTriple::from_point(x)).collect();
    let instance = UcpDecisionInstance::new(Payload::Cf(cfs), Utility::Birch, k, -budget)?;
    Ok(ReductionOutput { instance, back_map: BackMap::Identity })
}

/// Penalty for forbidden assignments: any solution using one scores below
/// both `-budget` and every feasible facility cost.
pub fn ufl_big_m(ufl: &UflInstance, budget: &Rational) -> Rational {
    let mut total = Rational::zero();
    for j in 0..ufl.num_facilities() {
        total += ufl.opening(j).abs();
        for i in 0..ufl.num_clients() {
            total += ufl.service(i, j).abs();
        }
    }
    Rational::one() + Rational::from(2i64) * total + budget.abs()
}

/// Facility location with cost at most `budget`, posed as exemplar selection.
///
/// Points are the facilities, then the clients, then `|F| - 1` padding points,
/// and `k = |F|`. A facility's self-similarity is minus its opening cost, a
/// client's similarity to a facility is minus the service cost, and a closed
/// facility or padding point joins any facility's block at no cost. A padding
/// point may also be its own exemplar at no cost, which lets fewer than `|F|`
/// facilities open. Everything else is `-M`.
pub fn reduce_ufl_to_ap(ufl: &UflInstance, budget: &Rational) -> Result<ReductionOutput, ReductionError> {
    let nf = ufl.num_facilities();
    let nc = ufl.num_clients();
    let padding = nf - 1;
    let n = nf + nc + padding;
    let big_m = ufl_big_m(ufl, budget);
    let mut rows = vec![vec![-&big_m; n]; n];
    for (j, row) in rows.iter_mut().enumerate().take(nf) {
        for (jj, value) in row.iter_mut().enumerate().take(nf) {
            *value = if j == jj { -ufl.opening(j) } else { Rational::zero() };
        }
    }
    for i in 0..nc {
        for j in 0..nf {
            rows[nf + i][j] = -ufl.service(i, j);
        }
    }
    for z in (nf + nc)..n {
        rows[z][z] = Rational::zero();
        for j in 0..nf {
            rows[z][j] = Rational::zero();
        }
    }
    let s = SimilarityMatrix::new(rows).expect("square by construction");
    let instance = UcpDecisionInstance::new(Payload::Similarity(s), Utility::Exemplar, nf, -budget)?;
    Ok(ReductionOutput { instance, back_map: BackMap::OpenFacilities { facilities: nf } })
}

/// Sparse solution with at most `t` nonzeros, posed as self-representation of
/// `[A' A' b]` with one block and at most `2n' + t'` nonzeros.
///
/// `A'` drops the zero columns of `A` (they need no representation and would
/// break the nonzero count) and `t' = min(t, n')`, which leaves the source
/// answer unchanged and keeps the infeasibility penalty below the threshold.
pub fn reduce_l0_to_ssc(l0: &L0Instance) -> Result<ReductionOutput, ReductionError> {
    if l0.b().iter().all(Rational::is_zero) {
        return Err(ReductionError::ZeroTarget);
    }
    let a = l0.a();
    let kept: Vec<usize> = (0..a.cols()).filter(|&c| a.column(c).iter().any(|v| !v.is_zero())).collect();
    let reduced = a.select_columns(&kept);
    let target = RationalMatrix::from_rows(l0.b().iter().map(|v| vec![v.clone()]).collect())
        .expect("b is a column");
    let x = reduced
        .hstack(&reduced)
        .and_then(|x| x.hstack(&target))
        .expect("row counts match");
    let budget = 2 * kept.len() + l0.t().min(kept.len());
    let instance = UcpDecisionInstance::new(Payload::Data(x), Utility::Ssc, 1, -Rational::from(budget))?;
    Ok(ReductionOutput {
        instance,
        back_map: BackMap::SumCopies { kept_columns: kept, original_columns: a.cols() },
    })
}

/// The k-median decision as a UCP instance with the medoid utility.
pub fn embed_kmedian(metric: &MetricInstance, k: usize, budget: &Rational) -> Result<ReductionOutput, ReductionError> {
    if k == 0 || k > metric.n() {
        return Err(ReductionError::InvalidK { k, n: metric.n() });
    }
    let instance = UcpDecisionInstance::new(Payload::Metric(metric.clone()), Utility::Med, k, -budget)?;
    Ok(ReductionOutput { instance, back_map: BackMap::Medoids })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{decide_ucp, solve_ucp, Decision};
    use crate::model::{graph_metric, GraphInstance};
    use crate::reductions::SourceCertificate;

    fn yes(out: &ReductionOutput) -> bool {
        decide_ucp(&out.instance).unwrap().is_yes()
    }

    #[test]
    fn kmeans_birch_examples() {
        let pts = EuclideanInstance::from_line(&[0, 2]);
        assert!(yes(&reduce_kmeans_to_birch(&pts, 1, &2.into()).unwrap()));
        assert!(!yes(&reduce_kmeans_to_birch(&pts, 1, &1.into()).unwrap()));
        assert!(yes(&reduce_kmeans_to_birch(&pts, 2, &0.into()).unwrap()));
    }

    #[test]
    fn ufl_examples() {
        let single = UflInstance::from_i64(&[1], &[&[2]]).unwrap();
        let out = reduce_ufl_to_ap(&single, &3.into()).unwrap();
        assert_eq!(out.instance.n(), 2);
        assert_eq!(solve_ucp(&out.instance).unwrap().optimum, -3);
        let Decision::Yes(p) = decide_ucp(&out.instance).unwrap() else { panic!("expected YES") };
        assert_eq!(out.back_map.apply(&out.instance, &p, None).unwrap(), SourceCertificate::OpenFacilities(vec![0]));
        assert!(!yes(&reduce_ufl_to_ap(&single, &2.into()).unwrap()));

        let two = UflInstance::from_i64(&[0, 10], &[&[1, 0]]).unwrap();
        let out = reduce_ufl_to_ap(&two, &1.into()).unwrap();
        assert_eq!(out.instance.n(), 4);
        let Decision::Yes(p) = decide_ucp(&out.instance).unwrap() else { panic!("expected YES") };
        assert_eq!(out.back_map.apply(&out.instance, &p, None).unwrap(), SourceCertificate::OpenFacilities(vec![0]));
        assert!(!yes(&reduce_ufl_to_ap(&two, &0.into()).unwrap()));
    }

    #[test]
    fn l0_examples() {
        let identity = L0Instance::new(RationalMatrix::identity(2), vec![1.into(), 0.into()], 1).unwrap();
        let out = reduce_l0_to_ssc(&identity).unwrap();
        assert_eq!(out.instance.threshold(), &Rational::from_integer(-5));
        let result = solve_ucp(&out.instance).unwrap();
        assert_eq!(result.optimum, -5);
        let cert = out.back_map.apply(&out.instance, &result.argmax, result.representation.as_ref()).unwrap();
        assert_eq!(cert, SourceCertificate::Solution(vec![1.into(), 0.into()]));

        let column = L0Instance::new(RationalMatrix::from_i64_rows(&[&[1]]).unwrap(), vec![1.into()], 0).unwrap();
        assert!(!yes(&reduce_l0_to_ssc(&column).unwrap()));

        let row = L0Instance::new(RationalMatrix::from_i64_rows(&[&[1, 1]]).unwrap(), vec![2.into()], 1).unwrap();
        let out = reduce_l0_to_ssc(&row).unwrap();
        let result = solve_ucp(&out.instance).unwrap();
        assert!(result.optimum >= *out.instance.threshold());
        let cert = out.back_map.apply(&out.instance, &result.argmax, result.representation.as_ref()).unwrap();
        assert_eq!(cert, SourceCertificate::Solution(vec![2.into(), 0.into()]));
    }

    #[test]
    fn l0_zero_columns_are_dropped() {
        // the unpruned gadget would accept this: the zero copies cost nothing
        let a = RationalMatrix::from_i64_rows(&[&[1, 0], &[0, 0]]).unwrap();
        let l0 = L0Instance::new(a, vec![1.into(), 0.into()], 0).unwrap();
        let out = reduce_l0_to_ssc(&l0).unwrap();
        assert_eq!(out.instance.n(), 3);
        assert!(!yes(&out));

        let zero = L0Instance::new(RationalMatrix::zeros(1, 2), vec![1.into()], 2).unwrap();
        assert!(!yes(&reduce_l0_to_ssc(&zero).unwrap()));
        let no_target = L0Instance::new(RationalMatrix::identity(2), vec![0.into(), 0.into()], 1).unwrap();
        assert_eq!(reduce_l0_to_ssc(&no_target), Err(ReductionError::ZeroTarget));
    }

    #[test]
    fn kmedian_examples() {
        let k3 = graph_metric(&GraphInstance::complete(3));
        assert!(yes(&embed_kmedian(&k3, 1, &2.into()).unwrap()));
        assert!(!yes(&embed_kmedian(&k3, 1, &1.into()).unwrap()));
        let line = MetricInstance::from_i64_rows(&[&[0, 1, 3], &[1, 0, 2], &[3, 2, 0]]).unwrap();
        assert!(yes(&embed_kmedian(&line, 3, &0.into()).unwrap()));
    }
}
