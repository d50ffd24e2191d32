use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, ensure, Context};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sgmpcs_core::engine::{ClockKind, LimitSequence, Traversal};
use sgmpcs_core::instance::{BestKnown, Bounds};
use sgmpcs_core::metrics::{mre, RunRecord};
use sgmpcs_core::sgmpcs::{BoundPolicy, Diversity, EngineConfig};
use sgmpcs_core::{run_sgmpcs, Instance};

use crate::args::SweepArgs;
use crate::io::{load_bounds, load_instance, write_atomic, write_record};
use crate::{CliResult, Failure};

/// A fully crossed design over elite size, `p`, fail-limit sequence,
/// backtracking method and diversity level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub elite_sizes: Vec<usize>,
    pub p: Vec<f64>,
    pub seq: Vec<LimitSequence>,
    pub bt: Vec<Traversal>,
    pub div: Vec<Diversity>,
    /// Instance files, relative to the spec file.
    pub instances: Vec<PathBuf>,
    #[serde(default = "one")]
    pub runs: u64,
    pub time_limit: f64,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default = "global")]
    pub bound: BoundPolicy,
    /// Best-known bounds CSV; without it each instance's best observed cost
    /// in the sweep serves as reference.
    #[serde(default)]
    pub bounds: Option<PathBuf>,
    #[serde(default)]
    pub clock: ClockKind,
}

fn one() -> u64 {
    1
}

fn global() -> BoundPolicy {
    BoundPolicy::Global
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub index: usize,
    pub elite_size: usize,
    pub p: f64,
    pub seq: LimitSequence,
    pub bt: Traversal,
    pub div: Diversity,
}

impl SweepSpec {
    pub fn validate(&self) -> anyhow::Result<()> {
        ensure!(!self.instances.is_empty(), "the sweep lists no instances");
        ensure!(self.runs >= 1, "runs must be at least 1");
        ensure!(
            !(self.elite_sizes.is_empty()
                || self.p.is_empty()
                || self.seq.is_empty()
                || self.bt.is_empty()
                || self.div.is_empty()),
            "every parameter list needs at least one value"
        );
        for cell in self.cells() {
            self.config(&cell, 0).validate()?;
        }
        Ok(())
    }

    /// Cartesian product in `elite_sizes, p, seq, bt, div` order.
    pub fn cells(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for &elite_size in &self.elite_sizes {
            for &p in &self.p {
                for &seq in &self.seq {
                    for &bt in &self.bt {
                        for &div in &self.div {
                            cells.push(Cell {
                                index: cells.len(),
                                elite_size,
                                p,
                                seq,
                                bt,
                                div,
                            });
                        }
                    }
                }
            }
        }
        cells
    }

    pub fn config(&self, cell: &Cell, seed: u64) -> EngineConfig {
        EngineConfig {
            elite_size: cell.elite_size,
            p: cell.p,
            sequence: cell.seq,
            traversal: cell.bt,
            diversity: cell.div,
            bound_policy: self.bound,
            time_limit: self.time_limit,
            seed,
            clock: self.clock,
            ..EngineConfig::default()
        }
    }
}

struct Job {
    cell: usize,
    instance: usize,
    seed: u64,
}

fn load_spec(path: &Path) -> CliResult<SweepSpec> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read sweep spec {}", path.display()))
        .map_err(Failure::usage)?;
    let spec: SweepSpec = serde_json::from_str(&text)
        .with_context(|| format!("malformed sweep spec {}", path.display()))
        .map_err(Failure::usage)?;
    spec.validate().map_err(Failure::usage)?;
    Ok(spec)
}

pub fn run(args: &SweepArgs) -> CliResult {
    let spec = load_spec(&args.spec)?;
    let base = args.spec.parent().unwrap_or(Path::new("."));
    let instances: Vec<Instance> = spec
        .instances
        .iter()
        .map(|p| load_instance(&base.join(p), None))
        .collect::<CliResult<_>>()?;
    let names: BTreeSet<&str> = instances.iter().map(Instance::name).collect();
    if names.len() != instances.len() {
        return Err(Failure::usage(anyhow!("instance file names must be distinct")));
    }
    let known = spec.bounds.as_ref().map(|p| load_bounds(&base.join(p))).transpose()?;

    let cells = spec.cells();
    let mut jobs = Vec::new();
    for cell in &cells {
        for instance in 0..instances.len() {
            for _ in 0..spec.runs {
                jobs.push(Job {
                    cell: cell.index,
                    instance,
                    seed: spec.base_seed + jobs.len() as u64,
                });
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.max_parallel.unwrap_or(0))
        .build()
        .map_err(|e| Failure::usage(anyhow!(e)))?;
    let records_dir = args.out.join("records");
    let records: Vec<RunRecord> = pool.install(|| {
        jobs.par_iter()
            .map(|job| {
                let cell = &cells[job.cell];
                let instance = &instances[job.instance];
                let mut config = spec.config(cell, job.seed);
                config.known_optimum = known.as_ref().and_then(|k| k.optimum(instance.name()));
                let record = run_sgmpcs(instance, &config).map_err(Failure::usage)?.record;
                write_record(&records_dir.join(format!("cell_{:03}", cell.index)), &record)?;
                Ok(record)
            })
            .collect::<CliResult<_>>()
    })?;

    let reference = match known {
        Some(k) => k,
        None => observed_best(&records),
    };
    let mut by_cell: Vec<Vec<&RunRecord>> = vec![Vec::new(); cells.len()];
    for (job, record) in jobs.iter().zip(&records) {
        by_cell[job.cell].push(record);
    }
    let mres: Vec<f64> = by_cell
        .iter()
        .map(|group| mre(group.iter().copied(), &reference))
        .collect::<Result<_, _>>()
        .map_err(Failure::usage)?;

    write_atomic(&args.out.join("cells.csv"), &cells_csv(&cells, &mres, spec.runs)).map_err(Failure::input)?;
    let summary = summary(&cells, &mres);
    write_atomic(&args.out.join("summary.txt"), &summary).map_err(Failure::input)?;
    print!("{summary}");
    Ok(())
}

/// Best cost seen per instance over all records.
pub fn observed_best(records: &[RunRecord]) -> BestKnown {
    let mut best: BTreeMap<&str, i64> = BTreeMap::new();
    for r in records {
        let entry = best.entry(&r.instance).or_insert(r.best_makespan);
        *entry = (*entry).min(r.best_makespan);
    }
    let mut known = BestKnown::default();
    for (name, cost) in best {
        let bounds = Bounds {
            lower: cost,
            upper: cost,
            optimal: false,
        };
        known.insert(name, bounds).expect("lower equals upper");
    }
    known
}

fn cell_label(cell: &Cell) -> String {
    format!(
        "|e|={} p={} seq={} bt={} div={}",
        cell.elite_size,
        cell.p,
        name(&cell.seq),
        name(&cell.bt),
        name(&cell.div)
    )
}

fn name<T: Serialize>(value: &T) -> String {
    serde_json::to_value(value)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

pub fn cells_csv(cells: &[Cell], mres: &[f64], runs: u64) -> String {
    let mut out = String::from("cell,elite_size,p,seq,bt,div,runs,mre\n");
    for (cell, mre) in cells.iter().zip(mres) {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{:.8}",
            cell.index,
            cell.elite_size,
            cell.p,
            name(&cell.seq),
            name(&cell.bt),
            name(&cell.div),
            runs,
            mre
        );
    }
    out
}

/// The five best and five worst cells by MRE.
fn summary(cells: &[Cell], mres: &[f64]) -> String {
    let mut order: Vec<usize> = (0..cells.len()).collect();
    order.sort_by(|&a, &b| mres[a].total_cmp(&mres[b]).then(a.cmp(&b)));
    let shown = order.len().min(5);
    let mut out = String::from("best cells\n");
    for &i in &order[..shown] {
        let _ = writeln!(out, "  {:.8}  {}", mres[i], cell_label(&cells[i]));
    }
    out.push_str("worst cells\n");
    for &i in order.iter().rev().take(shown) {
        let _ = writeln!(out, "  {:.8}  {}", mres[i], cell_label(&cells[i]));
    }
    out
}
