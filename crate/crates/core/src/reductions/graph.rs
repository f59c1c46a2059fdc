//! Graph problems encoded through the {0,1,2} graph metric.

use super::{BackMap, ReductionError, ReductionOutput};
use crate::instance::{Payload, UcpDecisionInstance, Utility};
use crate::model::{graph_metric, GraphInstance};
use crate::rational::Rational;

fn check_k(k: usize, n: usize) -> Result<(), ReductionError> {
    if k == 0 || k > n {
        return Err(ReductionError::InvalidK { k, n });
    }
    Ok(())
}

/// `kappa`-colorability: partitions with no same-block edge are exactly the
/// proper colorings, so threshold 0 on the conflict utility.
pub fn reduce_coloring(g: &GraphInstance, kappa: usize) -> Result<ReductionOutput, ReductionError> {
    check_k(kappa, g.n())?;
    let instance = UcpDecisionInstance::new(Payload::Metric(graph_metric(g)), Utility::Conf, kappa, Rational::zero())?;
    Ok(ReductionOutput { instance, back_map: BackMap::ColorClasses })
}

/// Connected subgraph on `size` vertices with at least `min_edges` edges:
/// density utility at scale 1 with `delta = 2 * min_edges / size`, `k = 2`
/// and threshold `size`.
pub fn reduce_fdcs(g: &GraphInstance, size: usize, min_edges: usize) -> Result<ReductionOutput, ReductionError> {
    if size == 0 || size >= g.n() {
        return Err(ReductionError::DegenerateSize { size, n: g.n() });
    }
    let utility = Utility::Dens {
        eps: Rational::one(),
        size,
        delta: Rational::ratio(2 * min_edges as i64, size as i64),
    };
    let instance = UcpDecisionInstance::new(Payload::Metric(graph_metric(g)), utility, 2, Rational::from(size))?;
    Ok(ReductionOutput { instance, back_map: BackMap::DesignatedBlock { size, min_edges } })
}

/// Bisection with at most `budget` cut edges: cut utility at scale 1 with
/// threshold `-budget`.
pub fn reduce_bisection(g: &GraphInstance, budget: usize) -> Result<ReductionOutput, ReductionError> {
    if g.n() % 2 != 0 {
        return Err(ReductionError::OddN(g.n()));
    }
    let instance = UcpDecisionInstance::new(
        Payload::Metric(graph_metric(g)),
        Utility::Bis { eps: Rational::one() },
        2,
        -Rational::from(budget),
    )?;
    Ok(ReductionOutput { instance, back_map: BackMap::BisectionSides })
}

/// Cover by `k` cliques: every block must have diameter at most 1.
pub fn reduce_cliquecover(g: &GraphInstance, k: usize) -> Result<ReductionOutput, ReductionError> {
    check_k(k, g.n())?;
    let instance = UcpDecisionInstance::new(
        Payload::Metric(graph_metric(g)),
        Utility::Cl { diameter: Rational::one() },
        k,
        Rational::zero(),
    )?;
    Ok(ReductionOutput { instance, back_map: BackMap::Cliques })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{decide_ucp, Decision};
    use crate::reductions::SourceCertificate;

    fn triangle_plus_isolated() -> GraphInstance {
        GraphInstance::new(4, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn coloring_examples() {
        let k3 = GraphInstance::complete(3);
        let out = reduce_coloring(&k3, 3).unwrap();
        assert_eq!(out.instance.k(), 3);
        assert_eq!(out.instance.threshold(), &Rational::zero());
        let Decision::Yes(p) = decide_ucp(&out.instance).unwrap() else { panic!("expected YES") };
        assert_eq!(
            out.back_map.apply(&out.instance, &p, None).unwrap(),
            SourceCertificate::Coloring(vec![0, 1, 2])
        );
        assert_eq!(decide_ucp(&reduce_coloring(&k3, 2).unwrap().instance).unwrap(), Decision::No);
        assert!(decide_ucp(&reduce_coloring(&GraphInstance::empty(3), 1).unwrap().instance).unwrap().is_yes());
        assert_eq!(reduce_coloring(&k3, 4), Err(ReductionError::InvalidK { k: 4, n: 3 }));
    }

    #[test]
    fn fdcs_examples() {
        let g = triangle_plus_isolated();
        let out = reduce_fdcs(&g, 3, 3).unwrap();
        let Decision::Yes(p) = decide_ucp(&out.instance).unwrap() else { panic!("expected YES") };
        assert_eq!(out.back_map.apply(&out.instance, &p, None).unwrap(), SourceCertificate::Subgraph(vec![0, 1, 2]));
        assert_eq!(decide_ucp(&reduce_fdcs(&g, 3, 4).unwrap().instance).unwrap(), Decision::No);
        assert!(decide_ucp(&reduce_fdcs(&GraphInstance::path(4), 2, 1).unwrap().instance).unwrap().is_yes());
        assert_eq!(reduce_fdcs(&g, 4, 3), Err(ReductionError::DegenerateSize { size: 4, n: 4 }));
        assert_eq!(reduce_fdcs(&g, 0, 0), Err(ReductionError::DegenerateSize { size: 0, n: 4 }));
    }

    #[test]
    fn bisection_examples() {
        let c4 = GraphInstance::cycle(4);
        let out = reduce_bisection(&c4, 2).unwrap();
        assert_eq!(out.instance.threshold(), &Rational::from_integer(-2));
        let Decision::Yes(p) = decide_ucp(&out.instance).unwrap() else { panic!("expected YES") };
        assert_eq!(p.labels(), &[0, 0, 1, 1]);
        assert_eq!(decide_ucp(&reduce_bisection(&c4, 1).unwrap().instance).unwrap(), Decision::No);
        let two_edges = GraphInstance::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(decide_ucp(&reduce_bisection(&two_edges, 0).unwrap().instance).unwrap().is_yes());
        assert_eq!(reduce_bisection(&GraphInstance::path(3), 1), Err(ReductionError::OddN(3)));
    }

    #[test]
    fn cliquecover_examples() {
        assert!(decide_ucp(&reduce_cliquecover(&GraphInstance::complete(3), 1).unwrap().instance).unwrap().is_yes());
        let path = GraphInstance::path(3);
        assert_eq!(decide_ucp(&reduce_cliquecover(&path, 1).unwrap().instance).unwrap(), Decision::No);
        let Decision::Yes(p) = decide_ucp(&reduce_cliquecover(&path, 2).unwrap().instance).unwrap() else {
            panic!("expected YES")
        };
        assert_eq!(p.to_string(), "{1,2}|{3}");
    }
}
