use serde::{Deserialize, Serialize};

use super::diversity::mean_pairwise_diversity;
use crate::engine::ClockKind;
use crate::instance::{Solution, Time};

/// How a search inside a run was started.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StartKind {
    Empty,
    Guided,
}

/// One search of a run, kept when tracing is enabled.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchTrace {
    pub start: StartKind,
    /// Elite slot used as reference for guided starts.
    pub reference: Option<usize>,
    pub bound: Time,
    pub fail_limit: Option<u64>,
    pub fails: u64,
    pub found: Option<Time>,
    pub exhausted: bool,
}

/// Everything observed during one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub algorithm: String,
    pub instance: String,
    pub seed: u64,
    pub clock: ClockKind,
    pub time_limit: f64,
    /// `[seconds, best makespan]`, non-increasing in the value.
    pub cost_trajectory: Vec<(f64, Time)>,
    /// `[seconds, mean pairwise Hamming distance of the elite set]`.
    pub diversity_trajectory: Vec<(f64, f64)>,
    pub empty_starts: u64,
    pub guided_starts: u64,
    pub searches: u64,
    pub total_fails: u64,
    pub found_optimal: bool,
    pub proved_optimal: bool,
    pub best_makespan: Time,
    pub elapsed: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<SearchTrace>>,
}

impl RunRecord {
    pub fn new(algorithm: impl Into<String>, instance: impl Into<String>, seed: u64) -> RunRecord {
        RunRecord {
            algorithm: algorithm.into(),
            instance: instance.into(),
            seed,
            clock: ClockKind::Work,
            time_limit: 0.0,
            cost_trajectory: Vec::new(),
            diversity_trajectory: Vec::new(),
            empty_starts: 0,
            guided_starts: 0,
            searches: 0,
            total_fails: 0,
            found_optimal: false,
            proved_optimal: false,
            best_makespan: 0,
            elapsed: 0.0,
            trace: None,
        }
    }

    /// Appends `(elapsed, best)` and the elite diversity at `elapsed`.
    pub fn record_snapshot(&mut self, elapsed: f64, best: Time, elite: &[Solution]) {
        self.record_cost(elapsed, best);
        self.diversity_trajectory
            .push((elapsed, mean_pairwise_diversity(elite)));
    }

    /// Appends a cost point only.
    pub fn record_cost(&mut self, elapsed: f64, best: Time) {
        debug_assert!(self.cost_trajectory.last().is_none_or(|&(_, c)| best <= c));
        self.cost_trajectory.push((elapsed, best));
        self.best_makespan = best;
    }

    /// Mean diversity over snapshots taken at or after `from` seconds; falls
    /// back to the last snapshot when none qualifies.
    pub fn mean_diversity_since(&self, from: f64) -> Option<f64> {
        let tail: Vec<f64> = self
            .diversity_trajectory
            .iter()
            .filter(|(t, _)| *t >= from)
            .map(|&(_, d)| d)
            .collect();
        if tail.is_empty() {
            self.diversity_trajectory.last().map(|&(_, d)| d)
        } else {
            Some(tail.iter().sum::<f64>() / tail.len() as f64)
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("run records serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<RunRecord> {
        serde_json::from_str(text)
    }
}
