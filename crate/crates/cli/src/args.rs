use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use sgmpcs_core::engine::{ClockKind, LimitSequence, Traversal};
use sgmpcs_core::instance::InstanceFormat;
use sgmpcs_core::sgmpcs::{Algorithm, BoundPolicy, Diversity};

#[derive(Debug, Parser)]
#[command(
    name = "sgmpcs",
    version,
    about = "Solution-guided multi-point constructive search for job shop scheduling"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one instance, possibly several times.
    Solve(SolveArgs),
    /// Run a crossed parameter sweep described by a JSON file.
    Sweep(SweepArgs),
    /// Write random work-flow instances in OR-Library format.
    Generate(GenerateArgs),
    /// Build result tables from run records.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// Input format; detected from the content when omitted.
    #[arg(long)]
    pub format: Option<InstanceFormat>,
    #[arg(long, default_value = "sgmpcs")]
    pub algorithm: Algorithm,
    #[arg(long, default_value_t = 4)]
    pub elite_size: usize,
    /// Probability of starting a search from an empty solution.
    #[arg(long, default_value_t = 0.25)]
    pub p: f64,
    #[arg(long, default_value = "luby")]
    pub seq: LimitSequence,
    #[arg(long, default_value = "chron")]
    pub bt: Traversal,
    #[arg(long, default_value = "low")]
    pub div: Diversity,
    #[arg(long, default_value = "global")]
    pub bound: BoundPolicy,
    /// Seconds per run on the selected clock.
    #[arg(long, default_value_t = 60.0)]
    pub time_limit: f64,
    /// Optional cap on the fails of one run.
    #[arg(long)]
    pub max_fails: Option<u64>,
    /// Base seed; run `i` uses `seed + i`.
    #[arg(long, env = "SGMPCS_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub runs: u64,
    /// Directory receiving one JSON record per run.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// `work` is deterministic; `wall` measures real time.
    #[arg(long, default_value = "work")]
    pub clock: ClockKind,
    /// Best-known bounds CSV, used to flag runs that reach a known optimum.
    #[arg(long)]
    pub bounds: Option<PathBuf>,
    #[arg(long, default_value_t = 50)]
    pub init_samples: usize,
    #[arg(long, default_value_t = 0.10)]
    pub critical_fraction: f64,
    /// Keep a per-search trace in each record.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// JSON sweep specification.
    pub spec: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Upper limit on concurrent runs; defaults to the number of hardware threads.
    #[arg(long)]
    pub max_parallel: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    /// Machine count; must be even.
    #[arg(long, default_value_t = 20)]
    pub m: usize,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long, env = "SGMPCS_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub lo: i64,
    #[arg(long, default_value_t = 99)]
    pub hi: i64,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Directory searched recursively for run records.
    #[arg(long)]
    pub records: PathBuf,
    #[arg(long)]
    pub bounds: PathBuf,
    /// Path of the makespan table; the optimality table goes next to it with
    /// an `_optimality` suffix.
    #[arg(long)]
    pub out: PathBuf,
}
