use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::config::{Algorithm, BoundPolicy, EngineConfig};
use super::runner::{finish, run_loop, Live, Recorder, RunResult};
use crate::engine::{search, Clock, LimitSequence, SearchParams, Traversal};
use crate::error::ConfigError;
use crate::heuristics::HeuristicConfig;
use crate::instance::Instance;
use crate::metrics::{RunRecord, SearchTrace, StartKind};

/// The constructive comparison algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaselineKind {
    Chron,
    Lds,
    Restart,
}

impl BaselineKind {
    pub fn algorithm(self) -> Algorithm {
        match self {
            BaselineKind::Chron => Algorithm::Chron,
            BaselineKind::Lds => Algorithm::Lds,
            BaselineKind::Restart => Algorithm::Restart,
        }
    }
}

/// Runs a baseline under the time limit, seed and clock of `config`.
///
/// Chron and LDS perform one deterministic search that tightens the bound at
/// every solution. Restart is the elite loop with `p = 1`, Luby limits and the
/// global bound; elite-set size and replacement rule do not affect it.
pub fn run_baseline(instance: &Instance, kind: BaselineKind, config: &EngineConfig) -> Result<RunResult, ConfigError> {
    config.validate()?;
    let traversal = match kind {
        BaselineKind::Chron => Traversal::Chron,
        BaselineKind::Lds => Traversal::Lds,
        BaselineKind::Restart => {
            let restart = EngineConfig {
                p: 1.0,
                sequence: LimitSequence::Luby,
                bound_policy: BoundPolicy::Global,
                ..config.clone()
            };
            return Ok(run_loop(instance, &restart, Algorithm::Restart));
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut clock = Clock::new(config.clock);
    let mut record = RunRecord::new(kind.algorithm().id(), instance.name(), config.seed);
    record.clock = config.clock;
    record.time_limit = config.time_limit;
    let bound = instance.horizon();
    let params = SearchParams::new(bound)
        .traversal(traversal)
        .deadline(Some(config.time_limit))
        .heuristic(HeuristicConfig::deterministic());

    // Periodic snapshots carry no elite set here, so only solutions are logged.
    let mut recorder = Recorder::new(record, bound + 1, 0.0);
    let mut monitor = Live {
        recorder: &mut recorder,
        elite: None,
    };
    let mut outcome = search(instance, &params, &mut rng, &mut clock, &mut monitor);
    let mut searches = 1;
    if outcome.best.is_none() {
        // The deadline struck before the first leaf: finish that descent so
        // the run still reports a schedule.
        let descent = SearchParams::new(bound)
            .heuristic(HeuristicConfig::deterministic())
            .first_solution_only();
        let mut monitor = Live {
            recorder: &mut recorder,
            elite: None,
        };
        let first = search(instance, &descent, &mut rng, &mut clock, &mut monitor);
        outcome.best = first.best;
        outcome.fails += first.fails;
        searches += 1;
    }
    let best = outcome.best.expect("an unbounded descent always completes");

    let record = &mut recorder.record;
    record.searches = searches;
    record.empty_starts = searches;
    record.total_fails = outcome.fails;
    if config.trace {
        record.trace = Some(vec![SearchTrace {
            start: StartKind::Empty,
            reference: None,
            bound,
            fail_limit: None,
            fails: outcome.fails,
            found: Some(best.makespan()),
            exhausted: outcome.exhausted,
        }]);
    }
    let elapsed = clock.elapsed();
    recorder.snapshot(elapsed, None);
    Ok(finish(
        recorder.record,
        best,
        outcome.exhausted,
        elapsed,
        config.known_optimum,
    ))
}
