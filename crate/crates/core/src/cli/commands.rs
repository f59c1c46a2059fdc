use std::error::Error;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use super::{Command, Reduction, SolveArgs, EXIT_NO, EXIT_YES};
use crate::exact::{solve_ucp, verify_reduction, VerificationReport};
use crate::gen::{sample_rng, sample_source};
use crate::heuristics::{
    ap_messages, gap_rows, greedy_complete_linkage, lloyd, mean_shift, pam_swap, summarize, ApConfig, GapRow,
    MeanShiftConfig, Method,
};
use crate::instance::{Payload, UcpDecisionInstance};
use crate::io::{from_json, parse_dimacs, InstanceDocument};
use crate::model::{EuclideanInstance, GraphInstance, MetricInstance};
use crate::partition::Partition;
use crate::reductions::{
    embed_kmedian, reduce_bisection, reduce_cliquecover, reduce_coloring, reduce_fdcs, reduce_kmeans_to_birch,
    reduce_l0_to_ssc, reduce_ufl_to_ap, L0Instance, ReductionKind, ReductionOutput, UflInstance,
};

type CliResult = Result<i32, Box<dyn Error>>;

pub(super) fn dispatch(command: Command) -> CliResult {
    match command {
        Command::Reduce { reduction, output } => reduce(reduction, output.as_deref()),
        Command::Solve(args) => solve(&args),
        Command::Eval { instance, partition } => eval(&instance, &partition),
        Command::Verify { kind, samples, nmax, seed, output } => verify(kind, samples, nmax, seed, output.as_deref()),
        Command::Gap { method, instances, seeds, output } => gap(method, &instances, seeds, output.as_deref()),
    }
}

fn read(path: &Path) -> Result<String, Box<dyn Error>> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

/// Writes `text` to `path`, or to stdout when there is no path.
fn emit(path: Option<&Path>, text: &str) -> Result<(), Box<dyn Error>> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display()).into()),
        None => {
            let mut out = std::io::stdout().lock();
            let written = out.write_all(text.as_bytes()).and_then(|()| {
                if text.ends_with('\n') {
                    Ok(())
                } else {
                    out.write_all(b"\n")
                }
            });
            match written {
                // a closed pipe (e.g. `| head`) is not an error
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

/// Status lines go to stderr while stdout carries the document, and to stdout
/// once the document has gone to a file.
fn note(to_file: bool, line: &str) {
    if to_file {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

fn with_path<T, E: std::fmt::Display>(path: &Path, r: Result<T, E>) -> Result<T, Box<dyn Error>> {
    r.map_err(|e| format!("{}: {e}", path.display()).into())
}

/// DIMACS, or the JSON graph form when the file starts with `{`.
fn load_graph(path: &Path) -> Result<GraphInstance, Box<dyn Error>> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        with_path(path, from_json::<GraphInstance>(&text))
    } else {
        with_path(path, parse_dimacs(&text))
    }
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Box<dyn Error>> {
    with_path(path, from_json::<T>(&read(path)?))
}

fn load_instance(path: &Path) -> Result<UcpDecisionInstance, Box<dyn Error>> {
    with_path(path, InstanceDocument::parse(&read(path)?))
}

fn reduce(reduction: Reduction, output: Option<&Path>) -> CliResult {
    let out: ReductionOutput = match reduction {
        Reduction::Coloring { kappa, input } => reduce_coloring(&load_graph(&input)?, kappa)?,
        Reduction::Fdcs { s, tau, input } => reduce_fdcs(&load_graph(&input)?, s, tau)?,
        Reduction::Bisection { budget, input } => reduce_bisection(&load_graph(&input)?, budget)?,
        Reduction::Cliquecover { k, input } => reduce_cliquecover(&load_graph(&input)?, k)?,
        Reduction::KmeansBirch { k, budget, input } => {
            reduce_kmeans_to_birch(&load_json::<EuclideanInstance>(&input)?, k, &budget)?
        }
        Reduction::UflAp { budget, input } => reduce_ufl_to_ap(&load_json::<UflInstance>(&input)?, &budget)?,
        Reduction::L0Ssc { input } => reduce_l0_to_ssc(&load_json::<L0Instance>(&input)?)?,
        Reduction::Kmedian { k, budget, input } => embed_kmedian(&load_json::<MetricInstance>(&input)?, k, &budget)?,
    };
    let inst = &out.instance;
    emit(output, &InstanceDocument::to_json(inst))?;
    note(
        output.is_some(),
        &format!("n={} k={} utility={} threshold={}", inst.n(), inst.k(), inst.utility(), inst.threshold()),
    );
    Ok(EXIT_YES)
}

#[derive(Serialize)]
struct ExactReport<'a> {
    decision: &'static str,
    optimum: &'a crate::rational::Rational,
    threshold: &'a crate::rational::Rational,
    argmax: &'a [usize],
    evaluations: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    representation: Option<&'a crate::linalg::RationalMatrix>,
}

fn solve(args: &SolveArgs) -> CliResult {
    let inst = load_instance(&args.instance)?;
    let Some(method) = args.method else {
        let result = solve_ucp(&inst)?;
        let yes = &result.optimum >= inst.threshold();
        let report = ExactReport {
            decision: if yes { "YES" } else { "NO" },
            optimum: &result.optimum,
            threshold: inst.threshold(),
            argmax: result.argmax.labels(),
            evaluations: result.evaluations.to_string(),
            representation: result.representation.as_ref(),
        };
        emit(args.output.as_deref(), &serde_json::to_string_pretty(&report)?)?;
        return Ok(if yes { EXIT_YES } else { EXIT_NO });
    };
    let mismatch = || format!("method {method} does not apply to a {} payload", inst.payload().kind());
    let k = inst.k();
    let json = match (method, inst.payload()) {
        (Method::Lloyd, Payload::Euclidean(e)) => serde_json::to_string_pretty(&lloyd(e, k, args.seed)?)?,
        (Method::Linkage, Payload::Metric(m)) => serde_json::to_string_pretty(&greedy_complete_linkage(m, k)?)?,
        (Method::Ap, Payload::Similarity(s)) => {
            let config = ApConfig { damping: args.damping, ..ApConfig::default() };
            serde_json::to_string_pretty(&ap_messages(s, &config)?)?
        }
        (Method::Pam, Payload::Similarity(s)) => serde_json::to_string_pretty(&pam_swap(s, k, args.seed)?)?,
        (Method::MeanShift, Payload::Euclidean(e)) => {
            let bandwidth = args.bandwidth.ok_or("meanshift needs --bandwidth")?;
            serde_json::to_string_pretty(&mean_shift(e, &MeanShiftConfig::new(bandwidth))?)?
        }
        _ => return Err(mismatch().into()),
    };
    emit(args.output.as_deref(), &json)?;
    Ok(EXIT_YES)
}

fn parse_labels(text: &str) -> Result<Vec<usize>, Box<dyn Error>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| format!("bad label {t:?}").into()))
        .collect()
}

fn eval(path: &Path, labels: &str) -> CliResult {
    let inst = load_instance(path)?;
    let p = Partition::canonicalize(&parse_labels(labels)?)?;
    if p.k() != inst.k() {
        return Err(format!("partition has {} blocks, instance asks for k={}", p.k(), inst.k()).into());
    }
    let value = inst.evaluate(&p)?;
    let yes = &value >= inst.threshold();
    println!("value={value} threshold={} decision={}", inst.threshold(), if yes { "YES" } else { "NO" });
    Ok(if yes { EXIT_YES } else { EXIT_NO })
}

fn verify(kind: ReductionKind, samples: u64, nmax: usize, seed: u64, output: Option<&Path>) -> CliResult {
    let reports: Vec<(u64, VerificationReport)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let source = sample_source(kind, &mut sample_rng(seed, i), nmax);
            verify_reduction(&source).map(|r| (i, r)).map_err(|e| format!("sample {i} ({}): {e}", source.params()))
        })
        .collect::<Result<_, _>>()?;
    let mut csv = csv::Writer::from_writer(Vec::new());
    csv.write_record(["sample", "kind", "params", "source_answer", "ucp_answer", "agree", "witness", "certificate_accepted"])?;
    for (i, r) in &reports {
        csv.write_record([
            i.to_string(),
            r.kind.to_string(),
            r.params.clone(),
            yes_no(r.source_answer).to_string(),
            yes_no(r.ucp_answer).to_string(),
            r.agree.to_string(),
            r.witness.clone().unwrap_or_default(),
            r.certificate_accepted.map(|b| b.to_string()).unwrap_or_default(),
        ])?;
    }
    emit(output, &String::from_utf8(csv.into_inner()?)?)?;
    let passed = reports.iter().filter(|(_, r)| r.passed()).count();
    eprintln!("{kind}: {passed}/{} agree", reports.len());
    Ok(if passed == reports.len() { EXIT_YES } else { EXIT_NO })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "YES"
    } else {
        "NO"
    }
}

fn gap(method: Method, instances: &[PathBuf], seeds: u64, output: Option<&Path>) -> CliResult {
    let seeds: Vec<u64> = (0..seeds).collect();
    let ap = ApConfig::default();
    let mut rows: Vec<GapRow> = Vec::new();
    for path in instances {
        let inst = load_instance(path)?;
        let id = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
        rows.extend(with_path(path, gap_rows(&id, &inst, method, &seeds, &ap))?);
    }
    let mut csv = csv::Writer::from_writer(Vec::new());
    for row in &rows {
        csv.serialize(row)?;
    }
    emit(output, &String::from_utf8(csv.into_inner()?)?)?;
    let s = summarize(&rows);
    note(
        output.is_some(),
        &format!("{method}: {}/{} runs optimal ({:.3}), max gap {}", s.optimal, s.runs, s.fraction_optimal, s.max_abs_gap),
    );
    Ok(EXIT_YES)
}
