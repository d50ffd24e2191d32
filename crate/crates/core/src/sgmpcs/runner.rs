use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::{Algorithm, BoundPolicy, EngineConfig};
use super::elite::{init_elite, StartContext};
use crate::engine::{search, Clock, FailLimitSchedule, SearchMonitor, SearchParams};
use crate::error::ConfigError;
use crate::heuristics::HeuristicConfig;
use crate::instance::{Instance, Solution, Time};
use crate::metrics::{RunRecord, SearchTrace, StartKind};

/// Best cost of a run and whether it was shown optimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Incumbent {
    pub best: Time,
    pub proved: bool,
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub best: Solution,
    pub incumbent: Incumbent,
    pub record: RunRecord,
}

/// Tracks `c*` and the trajectories of a run.
pub(crate) struct Recorder {
    pub(crate) record: RunRecord,
    pub(crate) best: Time,
    cadence: f64,
    next_snapshot: f64,
}

impl Recorder {
    pub(crate) fn new(record: RunRecord, best: Time, cadence: f64) -> Recorder {
        Recorder {
            record,
            best,
            cadence,
            next_snapshot: if cadence > 0.0 { 0.0 } else { f64::INFINITY },
        }
    }

    /// Records the current state and schedules the next periodic snapshot. A
    /// non-positive cadence disables periodic snapshots.
    pub(crate) fn snapshot(&mut self, elapsed: f64, elite: Option<&[Solution]>) {
        match elite {
            Some(members) => self.record.record_snapshot(elapsed, self.best, members),
            None => self.record.record_cost(elapsed, self.best),
        }
        if self.cadence > 0.0 {
            while self.next_snapshot <= elapsed {
                self.next_snapshot += self.cadence;
            }
        } else {
            self.next_snapshot = f64::INFINITY;
        }
    }
}

/// Recorder view handed to a search; the elite set is read-only meanwhile.
pub(crate) struct Live<'a> {
    pub(crate) recorder: &'a mut Recorder,
    pub(crate) elite: Option<&'a [Solution]>,
}

impl SearchMonitor for Live<'_> {
    fn on_solution(&mut self, solution: &Solution, clock: &Clock) {
        let r = &mut *self.recorder;
        if solution.makespan() < r.best {
            r.best = solution.makespan();
            r.record.record_cost(clock.elapsed(), r.best);
        }
    }

    fn on_node(&mut self, clock: &Clock) {
        let elapsed = clock.elapsed();
        if elapsed >= self.recorder.next_snapshot {
            self.recorder.snapshot(elapsed, self.elite);
        }
    }
}

/// Runs the elite-guided restart loop until a proof, the time limit or the
/// optional fail budget, and returns the best elite member.
pub fn run_sgmpcs(instance: &Instance, config: &EngineConfig) -> Result<RunResult, ConfigError> {
    config.validate()?;
    Ok(run_loop(instance, config, Algorithm::Sgmpcs))
}

pub(crate) fn run_loop(instance: &Instance, config: &EngineConfig, algorithm: Algorithm) -> RunResult {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut clock = Clock::new(config.clock);
    let deadline = Some(config.time_limit);

    let mut elite = init_elite(instance, config, &mut rng, &mut clock);

    let mut record = RunRecord::new(algorithm.id(), instance.name(), config.seed);
    record.clock = config.clock;
    record.time_limit = config.time_limit;
    if config.trace {
        record.trace = Some(Vec::new());
    }
    let mut recorder = Recorder::new(record, elite.best().makespan(), config.cadence);
    recorder.snapshot(clock.elapsed(), Some(elite.members()));

    let heuristic = HeuristicConfig {
        critical_fraction: config.critical_fraction,
        randomized: true,
    };
    let mut schedule = match config.sequence {
        crate::engine::LimitSequence::Luby => FailLimitSchedule::luby_scaled(config.luby_multiplier),
        crate::engine::LimitSequence::Poly => FailLimitSchedule::new(config.sequence),
    };
    let mut improved = false;
    let mut proved = false;
    let mut total_fails = 0u64;

    while !proved && !clock.reached(deadline) && config.max_fails.is_none_or(|m| total_fails < m) {
        let empty = rng.random::<f64>() < config.p;
        let context = if empty {
            StartContext::Empty
        } else {
            StartContext::Guided(rng.random_range(0..elite.len()))
        };
        let reference = match context {
            StartContext::Empty => None,
            StartContext::Guided(r) => Some(elite.member(r).clone()),
        };
        let bound = match (config.bound_policy, &reference) {
            (BoundPolicy::Global, _) => recorder.best - 1,
            (BoundPolicy::Local, None) => elite.worst().makespan() - 1,
            (BoundPolicy::Local, Some(r)) => r.makespan() - 1,
        };
        let mut limit = schedule.next_limit(improved);
        if let Some(max) = config.max_fails {
            limit = limit.min(max - total_fails);
        }
        let params = SearchParams::new(bound)
            .reference(reference.as_ref())
            .fail_limit(Some(limit))
            .traversal(config.traversal)
            .deadline(deadline)
            .heuristic(heuristic);

        let before = recorder.best;
        let mut monitor = Live {
            recorder: &mut recorder,
            elite: Some(elite.members()),
        };
        let outcome = search(instance, &params, &mut rng, &mut clock, &mut monitor);
        improved = recorder.best < before;
        total_fails += outcome.fails;

        let record = &mut recorder.record;
        record.searches += 1;
        if empty {
            record.empty_starts += 1;
        } else {
            record.guided_starts += 1;
        }
        if let Some(trace) = record.trace.as_mut() {
            trace.push(SearchTrace {
                start: if empty { StartKind::Empty } else { StartKind::Guided },
                reference: match context {
                    StartContext::Guided(r) => Some(r),
                    StartContext::Empty => None,
                },
                bound,
                fail_limit: Some(limit),
                fails: outcome.fails,
                found: outcome.best.as_ref().map(Solution::makespan),
                exhausted: outcome.exhausted,
            });
        }

        if outcome.exhausted && outcome.final_bound >= recorder.best - 1 {
            proved = true;
        }
        if let Some(s) = outcome.best {
            if elite.replace(s, context).is_some() {
                recorder.snapshot(clock.elapsed(), Some(elite.members()));
            }
        }
    }

    recorder.record.total_fails = total_fails;
    let elapsed = clock.elapsed();
    recorder.snapshot(elapsed, Some(elite.members()));
    let best = elite.best().clone();
    debug_assert_eq!(best.makespan(), recorder.best);
    finish(recorder.record, best, proved, elapsed, config.known_optimum)
}

pub(crate) fn finish(
    mut record: RunRecord,
    best: Solution,
    proved: bool,
    elapsed: f64,
    known_optimum: Option<Time>,
) -> RunResult {
    let cost = best.makespan();
    record.best_makespan = cost;
    record.proved_optimal = proved;
    record.found_optimal = proved || known_optimum.is_some_and(|o| cost <= o);
    record.elapsed = elapsed;
    RunResult {
        best,
        incumbent: Incumbent { best: cost, proved },
        record,
    }
}
