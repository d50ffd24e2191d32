use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use sgmpcs_core::error::MetricsError;
use sgmpcs_core::metrics::{ResultTable, RunRecord};
use walkdir::WalkDir;

use crate::args::ReportArgs;
use crate::io::{load_bounds, write_atomic};
use crate::{CliResult, Failure, EXIT_MISSING_BOUNDS};

/// Every `*.json` record below `dir`, in path order.
pub fn read_records(dir: &Path) -> anyhow::Result<Vec<RunRecord>> {
    let mut paths = Vec::new();
    for entry in WalkDir::new(dir).sort_by_file_name() {
        let entry = entry.with_context(|| format!("cannot scan {}", dir.display()))?;
        if entry.file_type().is_file() && entry.path().extension().is_some_and(|e| e == "json") {
            paths.push(entry.into_path());
        }
    }
    paths
        .iter()
        .map(|path| {
            let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            RunRecord::from_json(&text).with_context(|| format!("{} is not a run record", path.display()))
        })
        .collect()
}

/// `tables.csv` -> `tables_optimality.csv`.
pub fn optimality_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let ext = out
        .extension()
        .map(|e| e.to_string_lossy().into_owned())
        .unwrap_or_else(|| "csv".into());
    out.with_file_name(format!("{stem}_optimality.{ext}"))
}

pub fn run(args: &ReportArgs) -> CliResult {
    let records = read_records(&args.records).map_err(Failure::input)?;
    let best_known = load_bounds(&args.bounds)?;
    let table = match ResultTable::build(&records, &best_known) {
        Ok(table) => table,
        Err(MetricsError::MissingBounds(missing)) => {
            for name in &missing {
                eprintln!("missing bounds for instance {name}");
            }
            return Err(Failure {
                code: EXIT_MISSING_BOUNDS,
                error: MetricsError::MissingBounds(missing).into(),
            });
        }
        Err(e) => return Err(Failure::input(e)),
    };
    write_atomic(&args.out, &table.to_csv()).map_err(Failure::input)?;
    write_atomic(&optimality_path(&args.out), &table.optimality_csv()).map_err(Failure::input)?;
    for (algorithm, mre) in &table.mre {
        println!("{algorithm} mre={mre:.8}");
    }
    Ok(())
}
