//! OR-Library and Taillard text layouts.
//!
//! OR-Library: a header line `n m`, then one line per job holding `m`
//! `(machine, duration)` pairs with 0-based machines. Lines starting with `#`
//! are ignored.
//!
//! Taillard: a header whose first numeric line starts with `n m` (optionally
//! followed by seeds and bounds), then an `n × m` processing-time matrix and an
//! `n × m` machine matrix with 1-based machines. Label words such as `Times`
//! and `Machines` may separate the blocks.

use std::fmt::Write as _;
use std::str::FromStr;

use super::{Instance, Time};
use crate::error::InstanceError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceFormat {
    OrLibrary,
    Taillard,
}

impl FromStr for InstanceFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "orlib" | "or-library" | "orlibrary" => Ok(InstanceFormat::OrLibrary),
            "taillard" | "ta" => Ok(InstanceFormat::Taillard),
            other => Err(format!("unknown instance format `{other}`")),
        }
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn parse_int(token: &str) -> Result<i64, InstanceError> {
    token
        .parse::<i64>()
        .map_err(|_| InstanceError::NotAnInteger(token.to_string()))
}

fn is_numeric_line(line: &str) -> bool {
    line.split_whitespace().all(|t| t.parse::<i64>().is_ok())
}

fn dimensions(n: i64, m: i64) -> Result<(usize, usize), InstanceError> {
    if n < 1 || m < 1 {
        return Err(InstanceError::MalformedHeader(format!(
            "dimensions must be positive, got {n} {m}"
        )));
    }
    Ok((n as usize, m as usize))
}

/// Picks a layout from the header shape: label words or a header carrying more
/// than two numbers mean Taillard, otherwise OR-Library.
pub fn detect_format(text: &str) -> InstanceFormat {
    let mut lines = content_lines(text);
    match lines.next() {
        Some(first) if !is_numeric_line(first) => InstanceFormat::Taillard,
        Some(first) if first.split_whitespace().count() > 2 => InstanceFormat::Taillard,
        _ => {
            let has_labels = content_lines(text).skip(1).any(|l| !is_numeric_line(l));
            if has_labels {
                InstanceFormat::Taillard
            } else {
                InstanceFormat::OrLibrary
            }
        }
    }
}

pub fn parse_instance(text: &str, format: Option<InstanceFormat>) -> Result<Instance, InstanceError> {
    match format.unwrap_or_else(|| detect_format(text)) {
        InstanceFormat::OrLibrary => parse_orlib(text),
        InstanceFormat::Taillard => parse_taillard(text),
    }
}

pub fn parse_orlib(text: &str) -> Result<Instance, InstanceError> {
    let mut lines = content_lines(text);
    let header = lines
        .next()
        .ok_or_else(|| InstanceError::MalformedHeader("empty input".into()))?;
    let header_tokens: Vec<&str> = header.split_whitespace().collect();
    if header_tokens.len() != 2 {
        return Err(InstanceError::MalformedHeader(format!(
            "expected `n m`, found `{header}`"
        )));
    }
    let (n, m) = dimensions(parse_int(header_tokens[0])?, parse_int(header_tokens[1])?)?;

    let mut routings = Vec::with_capacity(n);
    for job in 0..n {
        let line = lines.next().ok_or_else(|| InstanceError::TokenCount {
            context: format!("job {job}"),
            expected: 2 * m,
            found: 0,
        })?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 * m {
            return Err(InstanceError::TokenCount {
                context: format!("job {job}"),
                expected: 2 * m,
                found: tokens.len(),
            });
        }
        let mut routing = Vec::with_capacity(m);
        for (position, chunk) in tokens.chunks(2).enumerate() {
            let machine = parse_int(chunk[0])?;
            let duration = parse_int(chunk[1])?;
            if machine < 0 || machine as usize >= m {
                return Err(InstanceError::MachineOutOfRange { job, position, machine });
            }
            routing.push((machine as usize, duration as Time));
        }
        routings.push(routing);
    }
    if let Some(extra) = lines.next() {
        return Err(InstanceError::TokenCount {
            context: format!("trailing data `{extra}`"),
            expected: 0,
            found: extra.split_whitespace().count(),
        });
    }
    Instance::new("unnamed", &routings)
}

pub fn parse_taillard(text: &str) -> Result<Instance, InstanceError> {
    let mut lines = content_lines(text).skip_while(|l| !is_numeric_line(l));
    let header = lines
        .next()
        .ok_or_else(|| InstanceError::MalformedHeader("no numeric header line".into()))?;
    let header_values = header
        .split_whitespace()
        .map(parse_int)
        .collect::<Result<Vec<_>, _>>()?;
    if header_values.len() < 2 {
        return Err(InstanceError::MalformedHeader(format!(
            "expected at least `n m`, found `{header}`"
        )));
    }
    let (n, m) = dimensions(header_values[0], header_values[1])?;

    let values = lines
        .flat_map(str::split_whitespace)
        .filter(|t| !t.chars().next().is_some_and(char::is_alphabetic))
        .map(parse_int)
        .collect::<Result<Vec<_>, _>>()?;
    if values.len() != 2 * n * m {
        return Err(InstanceError::DimensionMismatch {
            expected: 2 * n * m,
            found: values.len(),
        });
    }
    let (times, machines) = values.split_at(n * m);

    let mut routings = Vec::with_capacity(n);
    for job in 0..n {
        let mut routing = Vec::with_capacity(m);
        for position in 0..m {
            let machine = machines[job * m + position];
            if machine < 1 || machine as usize > m {
                return Err(InstanceError::MachineOutOfRange { job, position, machine });
            }
            routing.push(((machine - 1) as usize, times[job * m + position]));
        }
        routings.push(routing);
    }
    Instance::new("unnamed", &routings)
}

/// Renders `instance` in OR-Library layout.
pub fn to_orlib(instance: &Instance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", instance.job_count(), instance.machine_count());
    for routing in instance.routings() {
        let line = routing
            .iter()
            .map(|(machine, duration)| format!("{machine} {duration}"))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(out, "{line}");
    }
    out
}
