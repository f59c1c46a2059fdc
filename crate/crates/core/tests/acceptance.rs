//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Runs without the libtest harness so the lines always show.

use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;

use ucp_core::exact::oracles::{
    self, ap_optimum, exemplar_optimum, l0_solve, source_decide, ufl_optimum, verify_source_certificate,
};
use ucp_core::exact::{decide_ucp, solve_ucp, Decision};
use ucp_core::gen::{random_graph, random_points, random_similarity, sample_rng};
use ucp_core::heuristics::fixtures::{ap_fixture, linkage_fixture, lloyd_fixture};
use ucp_core::heuristics::{ap_messages, greedy_complete_linkage, linkage_optimum, lloyd, mean_shift, MeanShiftConfig};
use ucp_core::linalg::RationalMatrix;
use ucp_core::model::graph_metric;
use ucp_core::partition::enumerate_partitions;
use ucp_core::reductions::{
    reduce, reduce_kmeans_to_birch, reduce_l0_to_ssc, reduce_ufl_to_ap, L0Instance, SourceInstance, UflInstance,
};
use ucp_core::utilities::{u_dens, u_kmeans, u_opt};
use ucp_core::{Payload, Rational, UcpDecisionInstance, Utility};

const SEED: u64 = 0x5eed;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "coloring reduction iff", limit: Some(Duration::from_secs(60)), run: coloring },
        Criterion { id: 2, name: "dense connected subgraph reduction iff", limit: Some(Duration::from_secs(120)), run: fdcs },
        Criterion { id: 3, name: "minimum bisection reduction iff", limit: Some(Duration::from_secs(60)), run: bisection },
        Criterion { id: 4, name: "clique cover reduction iff", limit: Some(Duration::from_secs(60)), run: clique_cover },
        Criterion { id: 5, name: "clustering-feature cost equals k-means cost", limit: None, run: birch_identity },
        Criterion { id: 6, name: "AP optimum equals minus facility-location optimum", limit: None, run: ufl_identity },
        Criterion { id: 7, name: "exemplar utility equals exemplar-set optimum", limit: None, run: exemplar_identity },
        Criterion { id: 8, name: "sparse solution reduction iff", limit: None, run: l0_gadget },
        Criterion { id: 9, name: "multi-scale density collapses to single scale", limit: None, run: opt_collapse },
        Criterion { id: 10, name: "heuristic failure fixtures", limit: Some(Duration::from_secs(30)), run: fixtures },
        Criterion { id: 11, name: "Lloyd and mean-shift monotonicity", limit: None, run: monotonicity },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(detail), Some(limit)) if elapsed > limit => Err(format!("{detail}; over the {}s limit", limit.as_secs())),
            (o, _) => o,
        };
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {:>2} {status}: {} ({detail}) [{:.2}s]", c.id, c.name, elapsed.as_secs_f64());
        if outcome.is_err() {
            failed += 1;
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

/// Source oracle and UCP decision on one source instance, plus the
/// back-mapped certificate on YES. Returns a description of any mismatch.
fn check_source(source: &SourceInstance) -> Result<(), String> {
    let source_yes = source_decide(source).map_err(|e| e.to_string())?.is_yes();
    let out = reduce(source).map_err(|e| e.to_string())?;
    let decision = decide_ucp(&out.instance).map_err(|e| e.to_string())?;
    if source_yes != decision.is_yes() {
        return Err(format!("{}: source {source_yes}, UCP {}", source.params(), decision.is_yes()));
    }
    if let Decision::Yes(p) = decision {
        let representation = match out.instance.utility() {
            Utility::Ssc => solve_ucp(&out.instance).map_err(|e| e.to_string())?.representation,
            _ => None,
        };
        let cert = out.back_map.apply(&out.instance, &p, representation.as_ref()).map_err(|e| e.to_string())?;
        if !verify_source_certificate(source, &cert) {
            return Err(format!("{}: certificate {cert} rejected", source.params()));
        }
    }
    Ok(())
}

/// Checks every instance in parallel; reports the count or the first mismatch
/// in instance order.
fn check_all(sources: Vec<SourceInstance>) -> Outcome {
    let results: Vec<Result<(), String>> = sources.par_iter().map(check_source).collect();
    match results.into_iter().find_map(Result::err) {
        Some(e) => Err(e),
        None => Ok(format!("{n}/{n} agree", n = sources.len())),
    }
}

fn coloring() -> Outcome {
    let sources = (0..200)
        .map(|i| {
            let mut rng = sample_rng(SEED, i);
            let n = rng.gen_range(2..=8);
            let graph = random_graph(&mut rng, n);
            let colors = rng.gen_range(2..=4usize.min(n));
            SourceInstance::Coloring { graph, colors }
        })
        .collect();
    check_all(sources)
}

fn fdcs() -> Outcome {
    let mut sources = Vec::new();
    for i in 0..200 {
        let mut rng = sample_rng(SEED + 1, i);
        let n = rng.gen_range(2..=8);
        let graph = random_graph(&mut rng, n);
        for size in 1..n {
            for min_edges in 0..=size * (size - 1) / 2 {
                sources.push(SourceInstance::Fdcs { graph: graph.clone(), size, min_edges });
            }
        }
    }
    check_all(sources)
}

fn bisection() -> Outcome {
    let mut sources = Vec::new();
    for i in 0..100 {
        let mut rng = sample_rng(SEED + 2, i);
        let n = 2 * rng.gen_range(1..=4);
        let graph = random_graph(&mut rng, n);
        for budget in 0..=graph.num_edges() {
            sources.push(SourceInstance::Bisection { graph: graph.clone(), budget });
        }
    }
    check_all(sources)
}

fn clique_cover() -> Outcome {
    let mut sources = Vec::new();
    for i in 0..100 {
        let mut rng = sample_rng(SEED + 3, i);
        let n = rng.gen_range(1..=8);
        let graph = random_graph(&mut rng, n);
        for cliques in 1..=n {
            sources.push(SourceInstance::CliqueCover { graph: graph.clone(), cliques });
        }
    }
    check_all(sources)
}

fn birch_identity() -> Outcome {
    let mut partitions = 0usize;
    for i in 0..50 {
        let mut rng = sample_rng(SEED + 4, i);
        let n = rng.gen_range(1..=8);
        let dim = rng.gen_range(1..=3);
        let denom = rng.gen_range(1..=3);
        let points = random_points(&mut rng, n, dim, 6, denom);
        for k in 1..=n {
            let birch = reduce_kmeans_to_birch(&points, k, &Rational::zero()).map_err(|e| e.to_string())?.instance;
            if !matches!(birch.payload(), Payload::Cf(_)) {
                return Err("reduction did not produce clustering features".into());
            }
            let eval = birch.evaluator().map_err(|e| e.to_string())?;
            for p in enumerate_partitions(n, k).map_err(|e| e.to_string())? {
                let via_features = eval.evaluate(&p).map_err(|e| e.to_string())?;
                let direct = u_kmeans(&points, &p).map_err(|e| e.to_string())?;
                if via_features != direct {
                    return Err(format!("set {i}, partition {:?}: {via_features} != {direct}", p.labels()));
                }
                partitions += 1;
            }
        }
    }
    Ok(format!("50 point sets, {partitions} partitions, all equal"))
}

fn ufl_identity() -> Outcome {
    // every (|F|, |D|) shape with costs in {0, 1, 2}, encoded base 3
    let mut shapes = Vec::new();
    for nf in 1..=3u32 {
        for nc in 1..=3u32 {
            shapes.push((nf as usize, nc as usize, 3u64.pow(nf + nf * nc)));
        }
    }
    let total: u64 = shapes.iter().map(|s| s.2).sum();
    for &(nf, nc, count) in &shapes {
        let mismatch = (0..count).into_par_iter().find_map_first(|code| {
            let mut digits = (0..nf + nf * nc).scan(code, |rest, _| {
                let d = (*rest % 3) as i64;
                *rest /= 3;
                Some(d)
            });
            let opening: Vec<i64> = digits.by_ref().take(nf).collect();
            let service: Vec<Vec<i64>> = (0..nc).map(|_| digits.by_ref().take(nf).collect()).collect();
            let rows: Vec<&[i64]> = service.iter().map(Vec::as_slice).collect();
            let ufl = UflInstance::from_i64(&opening, &rows).expect("valid shape");
            let (cost, _) = ufl_optimum(&ufl).expect("within cap");
            let out = reduce_ufl_to_ap(&ufl, &cost).expect("valid instance");
            let s = out.instance.similarity().expect("similarity payload");
            let (ap, _) = ap_optimum(s).expect("within cap");
            (ap != -&cost).then(|| format!("F={nf} D={nc} code {code}: AP {ap}, UFL {cost}"))
        });
        if let Some(m) = mismatch {
            return Err(m);
        }
    }
    Ok(format!("{total} instances, all equal"))
}

fn exemplar_identity() -> Outcome {
    let mut checked = 0;
    for i in 0..50 {
        let mut rng = sample_rng(SEED + 6, i);
        let n = rng.gen_range(1..=7);
        let s = random_similarity(&mut rng, n, 5);
        for k in 1..=3.min(n) {
            let inst = UcpDecisionInstance::new(Payload::Similarity(s.clone()), Utility::Exemplar, k, Rational::zero())
                .map_err(|e| e.to_string())?;
            let over_partitions = solve_ucp(&inst).map_err(|e| e.to_string())?.optimum;
            let (over_sets, _) = exemplar_optimum(&s, k).map_err(|e| e.to_string())?;
            if over_partitions != over_sets {
                return Err(format!("instance {i}, k={k}: partitions {over_partitions}, exemplar sets {over_sets}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (instance, k) pairs equal"))
}

fn l0_gadget() -> Outcome {
    let values = [-1i64, 0, 1];
    let mut count = 0;
    for code in 0..81u32 {
        let entries: Vec<i64> = (0..4).map(|d| values[(code / 3u32.pow(d) % 3) as usize]).collect();
        for bcode in 0..9u32 {
            let b = [values[(bcode % 3) as usize], values[(bcode / 3) as usize]];
            if b == [0, 0] {
                continue;
            }
            for t in 0..=2 {
                let a = RationalMatrix::from_rows(vec![
                    vec![Rational::from(entries[0]), Rational::from(entries[1])],
                    vec![Rational::from(entries[2]), Rational::from(entries[3])],
                ])
                .expect("rectangular");
                let l0 = L0Instance::new(a, b.iter().map(|&v| Rational::from(v)).collect(), t).expect("shapes match");
                let source_yes = l0_solve(&l0).map_err(|e| e.to_string())?.is_some();
                let out = reduce_l0_to_ssc(&l0).map_err(|e| e.to_string())?;
                let ucp_yes = decide_ucp(&out.instance).map_err(|e| e.to_string())?.is_yes();
                if source_yes != ucp_yes {
                    return Err(format!("A={entries:?} b={b:?} t={t}: source {source_yes}, UCP {ucp_yes}"));
                }
                check_source(&SourceInstance::L0(l0))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count}/{count} agree"))
}

fn opt_collapse() -> Outcome {
    let one = Rational::one();
    let mut checked = 0;
    for i in 0..50 {
        let mut rng = sample_rng(SEED + 8, i);
        let n = rng.gen_range(2..=7);
        let m = graph_metric(&random_graph(&mut rng, n));
        let size = rng.gen_range(1..n);
        let min_edges = rng.gen_range(0..=size * (size - 1) / 2);
        let delta = Rational::ratio(2 * min_edges as i64, size as i64);
        for p in enumerate_partitions(n, 2).map_err(|e| e.to_string())? {
            let multi = u_opt(&m, &p, &one, size, min_edges).map_err(|e| e.to_string())?;
            let single = u_dens(&m, &p, &one, size, &delta).map_err(|e| e.to_string())?;
            if multi != single {
                return Err(format!("metric {i}, partition {:?}: {multi} != {single}", p.labels()));
            }
            checked += 1;
        }
    }
    Ok(format!("50 metrics, {checked} bipartitions equal"))
}

fn fixtures() -> Outcome {
    let mut notes = Vec::new();
    let budget = Duration::from_secs(10);

    let start = Instant::now();
    let (points, k, seed) = lloyd_fixture();
    let run = lloyd(&points, k, seed).map_err(|e| e.to_string())?;
    let (best, _) = oracles::kmeans_optimum(&points, k).map_err(|e| e.to_string())?;
    let again = lloyd(&points, k, seed).map_err(|e| e.to_string())?;
    let cost = -&run.value;
    if cost <= best || run != again || start.elapsed() > budget {
        return Err(format!("Lloyd ends at cost {cost}, optimum {best}"));
    }
    notes.push(format!("Lloyd cost {cost} > {best}"));

    let start = Instant::now();
    let (_, metric, k) = linkage_fixture();
    let run = greedy_complete_linkage(&metric, k).map_err(|e| e.to_string())?;
    let best = linkage_optimum(&metric, k).map_err(|e| e.to_string())?;
    let again = greedy_complete_linkage(&metric, k).map_err(|e| e.to_string())?;
    if best != Rational::from(-1) || run.value >= best || run != again || start.elapsed() > budget {
        return Err(format!("linkage diameter {}, optimum {}", -&run.value, -&best));
    }
    notes.push(format!("linkage diameter {} > 1", -&run.value));

    let start = Instant::now();
    let (s, config) = ap_fixture();
    let run = ap_messages(&s, &config).map_err(|e| e.to_string())?;
    let (best, _) = ap_optimum(&s).map_err(|e| e.to_string())?;
    let again = ap_messages(&s, &config).map_err(|e| e.to_string())?;
    if run.value >= best || run != again || start.elapsed() > budget {
        return Err(format!("AP value {}, optimum {best}", run.value));
    }
    notes.push(format!("AP value {} < {best}", run.value));
    Ok(notes.join("; "))
}

fn monotonicity() -> Outcome {
    for seed in 0..100 {
        let mut rng = sample_rng(SEED + 11, seed);
        let n = rng.gen_range(2..=12);
        let dim = rng.gen_range(1..=3);
        let points = random_points(&mut rng, n, dim, 10, 2);
        let k = rng.gen_range(1..=n.min(4));
        let run = lloyd(&points, k, seed).map_err(|e| e.to_string())?;
        if let Some(w) = run.trajectory.windows(2).find(|w| w[1] > w[0]) {
            return Err(format!("Lloyd run {seed}: cost rose from {} to {}", w[0], w[1]));
        }
    }
    let mut trajectories = 0;
    let mut instance = 0;
    while trajectories < 100 {
        let mut rng = sample_rng(SEED + 12, instance);
        let n = rng.gen_range(3..=10);
        let dim = rng.gen_range(1..=2);
        let points = random_points(&mut rng, n, dim, 10, 2);
        let bandwidth = rng.gen_range(0.5..3.0);
        let run = mean_shift(&points, &MeanShiftConfig::new(bandwidth)).map_err(|e| e.to_string())?;
        for (i, densities) in run.densities.iter().enumerate() {
            if let Some(w) = densities.windows(2).find(|w| w[1] < w[0] - 1e-9) {
                return Err(format!("mean-shift instance {instance}, point {i}: density fell from {} to {}", w[0], w[1]));
            }
            trajectories += 1;
        }
        instance += 1;
    }
    Ok(format!("100 Lloyd runs nonincreasing, {trajectories} mean-shift trajectories nondecreasing"))
}
