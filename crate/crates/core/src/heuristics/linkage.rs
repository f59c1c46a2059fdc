//! Greedy agglomerative clustering with complete (maximum) linkage.

use super::{check_k, HeuristicError, HeuristicRun, Method};
use crate::model::MetricInstance;
use crate::partition::Partition;
use crate::rational::Rational;
use crate::utilities::diameter;

/// Largest block diameter of `p`.
pub fn max_diameter(m: &MetricInstance, p: &Partition) -> Rational {
    p.blocks().iter().map(|b| diameter(m, b)).max().expect("partitions have a block")
}

fn linkage(m: &MetricInstance, a: &[usize], b: &[usize]) -> Rational {
    a.iter().flat_map(|&i| b.iter().map(move |&j| m.d(i, j))).max().expect("clusters are nonempty").clone()
}

/// Starts from singletons and merges the closest pair under complete linkage
/// until `k` clusters remain. Clusters are ordered by smallest member and ties
/// go to the lexicographically first pair. `value` is minus the largest final
/// diameter.
pub fn greedy_complete_linkage(m: &MetricInstance, k: usize) -> Result<HeuristicRun, HeuristicError> {
    check_k(k, m.n())?;
    let mut clusters: Vec<Vec<usize>> = (0..m.n()).map(|i| vec![i]).collect();
    let mut trajectory = Vec::new();
    while clusters.len() > k {
        let mut best: Option<(Rational, usize, usize)> = None;
        for a in 0..clusters.len() {
            for b in (a + 1)..clusters.len() {
                let d = linkage(m, &clusters[a], &clusters[b]);
                if best.as_ref().map_or(true, |(bd, _, _)| d < *bd) {
                    best = Some((d, a, b));
                }
            }
        }
        let (_, a, b) = best.expect("at least two clusters");
        let absorbed = clusters.remove(b);
        clusters[a].extend(absorbed);
        clusters[a].sort_unstable();
        let current = clusters.iter().map(|c| diameter(m, c)).max().expect("nonempty");
        trajectory.push(current.to_f64());
    }
    let partition = Partition::from_blocks(m.n(), &clusters)?;
    let value = -max_diameter(m, &partition);
    Ok(HeuristicRun {
        method: Method::Linkage,
        seed: None,
        iterations: trajectory.len(),
        partition,
        value,
        trajectory,
        converged: true,
        exemplars: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{graph_metric, GraphInstance};

    #[test]
    fn small_examples() {
        let run = greedy_complete_linkage(&graph_metric(&GraphInstance::complete(3)), 1).unwrap();
        assert_eq!(run.value, -1);
        let run = greedy_complete_linkage(&graph_metric(&GraphInstance::path(3)), 2).unwrap();
        assert_eq!(run.value, -1);
        assert_eq!(run.partition.to_string(), "{1,2}|{3}");
    }

    #[test]
    fn first_merge_can_block_the_clique_cover() {
        // path 3-1-2-4: merging 1,2 first leaves no diameter-1 bipartition
        let g = GraphInstance::new(4, [(2, 0), (0, 1), (1, 3)]).unwrap();
        let run = greedy_complete_linkage(&graph_metric(&g), 2).unwrap();
        assert_eq!(run.value, -2);
        let better = Partition::from_blocks(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        assert_eq!(max_diameter(&graph_metric(&g), &better), 1);
    }
}
