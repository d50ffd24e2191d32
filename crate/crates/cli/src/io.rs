use std::fs;
use std::path::Path;

use anyhow::Context;
use sgmpcs_core::instance::{parse_instance, BestKnown, InstanceFormat};
use sgmpcs_core::metrics::RunRecord;
use sgmpcs_core::Instance;

use crate::{CliResult, Failure};

/// Reads an instance and names it after the file stem.
pub fn load_instance(path: &Path, format: Option<InstanceFormat>) -> CliResult<Instance> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read instance {}", path.display()))
        .map_err(Failure::input)?;
    let instance = parse_instance(&text, format)
        .with_context(|| format!("cannot parse instance {}", path.display()))
        .map_err(Failure::input)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| instance.name().to_string());
    Ok(instance.with_name(name))
}

pub fn load_bounds(path: &Path) -> CliResult<BestKnown> {
    BestKnown::load(path)
        .with_context(|| format!("cannot read bounds {}", path.display()))
        .map_err(Failure::input)
}

/// Writes through a temporary sibling and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> anyhow::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    fs::write(&tmp, contents).with_context(|| format!("cannot write {}", path.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("cannot move {} into place", path.display()))?;
    Ok(())
}

pub fn record_file_name(record: &RunRecord) -> String {
    format!("{}_{}_{}.json", record.instance, record.algorithm, record.seed)
}

pub fn write_record(dir: &Path, record: &RunRecord) -> CliResult {
    let mut json = record.to_json();
    json.push('\n');
    write_atomic(&dir.join(record_file_name(record)), &json).map_err(Failure::input)
}
