//! The `ucp` command line.
//!
//! Exit status: 0 for success or YES, 1 for NO or any disagreement, 2 for
//! errors.

mod commands;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::heuristics::Method;
use crate::rational::Rational;
use crate::reductions::ReductionKind;

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ucp", version, about = "Universal clustering problem: reductions, exact oracles and heuristics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduce a source-problem instance to a UCP decision instance.
    Reduce {
        #[command(subcommand)]
        reduction: Reduction,
        /// Write the instance JSON here instead of stdout.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Solve an instance exactly or run a heuristic on it.
    Solve(SolveArgs),
    /// Score a given partition of an instance.
    Eval {
        instance: PathBuf,
        /// Block labels, one per point, comma separated (e.g. `0,0,1`).
        #[arg(long)]
        partition: String,
    },
    /// Check a reduction against the source oracle on random instances.
    Verify {
        /// coloring, fdcs, bisection, cliquecover, kmeans, ufl, l0 or kmedian.
        kind: ReductionKind,
        #[arg(long, default_value_t = 100)]
        samples: u64,
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the CSV report here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Optimality gaps of a heuristic against the exact oracle.
    Gap {
        #[arg(long)]
        method: Method,
        /// Instance JSON files.
        #[arg(required = true)]
        instances: Vec<PathBuf>,
        /// Seeds 0..seeds for seeded methods.
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        /// Write the CSV table here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Reduction {
    /// Graph coloring with at most `kappa` colors (DIMACS input).
    Coloring {
        #[arg(long)]
        kappa: usize,
        input: PathBuf,
    },
    /// Connected subgraph on `s` vertices with at least `tau` edges.
    Fdcs {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        tau: usize,
        input: PathBuf,
    },
    /// Balanced bisection cutting at most `budget` edges.
    Bisection {
        #[arg(long)]
        budget: usize,
        input: PathBuf,
    },
    /// Cover by at most `k` cliques.
    Cliquecover {
        #[arg(long)]
        k: usize,
        input: PathBuf,
    },
    /// k-means cost at most `budget` (points JSON: array of coordinate arrays).
    KmeansBirch {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        budget: Rational,
        input: PathBuf,
    },
    /// Facility location cost at most `budget` (UFL JSON).
    UflAp {
        #[arg(long)]
        budget: Rational,
        input: PathBuf,
    },
    /// Sparse solution of `Az = b` (JSON with `A`, `b`, `t`).
    L0Ssc { input: PathBuf },
    /// k-median cost at most `budget` (metric JSON: distance matrix rows).
    Kmedian {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        budget: Rational,
        input: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub instance: PathBuf,
    /// Enumerate every partition (capped by UCP_MAX_N, default 12 points).
    #[arg(long, conflicts_with = "method", required_unless_present = "method")]
    pub exact: bool,
    #[arg(long)]
    pub method: Option<Method>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Affinity propagation damping.
    #[arg(long, default_value_t = 0.5)]
    pub damping: f64,
    /// Mean-shift bandwidth.
    #[arg(long)]
    pub bandwidth: Option<f64>,
    /// Write the result JSON here instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command,
/// returning the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_YES };
        }
    };
    match commands::dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
