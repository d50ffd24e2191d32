use rand::Rng;
use serde::{Deserialize, Serialize};

use super::clock::Clock;
use super::state::{Fail, Mark, PairStatus, SearchState};
use crate::heuristics::{order_pair, HeuristicConfig, PairSelector};
use crate::instance::{Instance, Orientation, PairId, Solution, Time};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Traversal {
    /// Depth-first with chronological backtracking.
    Chron,
    /// Limited discrepancy search, iterating budgets `0, 1, 2, ...`.
    Lds,
}

/// Parameters of one resource-limited tree search.
#[derive(Debug, Clone, Copy)]
pub struct SearchParams<'r> {
    /// Guiding solution for value ordering.
    pub reference: Option<&'r Solution>,
    /// Maximum number of dead ends; `None` is unlimited.
    pub fail_limit: Option<u64>,
    /// Only solutions with makespan `<= bound` are accepted.
    pub bound: Time,
    pub traversal: Traversal,
    /// Largest LDS budget tried; `None` means the pair count.
    pub max_discrepancy: Option<usize>,
    /// Clock reading at which the search gives up.
    pub deadline: Option<f64>,
    pub heuristic: HeuristicConfig,
    /// Return as soon as one leaf is reached.
    pub first_solution_only: bool,
}

impl<'r> SearchParams<'r> {
    pub fn new(bound: Time) -> SearchParams<'r> {
        SearchParams {
            reference: None,
            fail_limit: None,
            bound,
            traversal: Traversal::Chron,
            max_discrepancy: None,
            deadline: None,
            heuristic: HeuristicConfig::default(),
            first_solution_only: false,
        }
    }

    pub fn reference(mut self, reference: Option<&'r Solution>) -> Self {
        self.reference = reference;
        self
    }

    pub fn fail_limit(mut self, limit: Option<u64>) -> Self {
        self.fail_limit = limit;
        self
    }

    pub fn traversal(mut self, traversal: Traversal) -> Self {
        self.traversal = traversal;
        self
    }

    pub fn deadline(mut self, deadline: Option<f64>) -> Self {
        self.deadline = deadline;
        self
    }

    pub fn heuristic(mut self, heuristic: HeuristicConfig) -> Self {
        self.heuristic = heuristic;
        self
    }

    pub fn first_solution_only(mut self) -> Self {
        self.first_solution_only = true;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Best (last) solution found; its makespan is `<=` the starting bound.
    pub best: Option<Solution>,
    /// The tree was fully explored under `final_bound`.
    pub exhausted: bool,
    pub fails: u64,
    /// Number of improving leaves reached.
    pub solutions: usize,
    /// Bound in force when the search ended (tightened after each leaf).
    pub final_bound: Time,
    pub timed_out: bool,
}

/// Callbacks fired during a search.
pub trait SearchMonitor {
    fn on_solution(&mut self, _solution: &Solution, _clock: &Clock) {}
    fn on_node(&mut self, _clock: &Clock) {}
}

impl SearchMonitor for () {}

/// Runs one tree search over pair orientations.
///
/// Every dead end counts as one fail. Each leaf becomes the new best and the
/// bound drops to its makespan minus one, so successive solutions strictly
/// improve.
pub fn search<R, M>(
    instance: &Instance,
    params: &SearchParams,
    rng: &mut R,
    clock: &mut Clock,
    monitor: &mut M,
) -> SearchOutcome
where
    R: Rng + ?Sized,
    M: SearchMonitor + ?Sized,
{
    let state = SearchState::new(instance);
    let root = state.mark();
    let mut searcher = Searcher {
        state,
        params,
        selector: PairSelector::new(),
        rng,
        clock,
        monitor,
        stack: Vec::new(),
        root,
        fails: 0,
        bound: params.bound,
        best: None,
        solutions: 0,
        timed_out: false,
        stop: false,
    };
    searcher.run()
}

struct Frame {
    pair: PairId,
    alternative: Orientation,
    mark: Mark,
    discrepancies: usize,
    open: bool,
}

enum PassEnd {
    /// Every branch allowed by the budget was explored; `cut` records whether
    /// the budget withheld any branch.
    Complete {
        cut: bool,
    },
    Stopped,
}

struct Searcher<'a, 'p, 'r, R: ?Sized, M: ?Sized> {
    state: SearchState<'a>,
    params: &'p SearchParams<'r>,
    selector: PairSelector,
    rng: &'p mut R,
    clock: &'p mut Clock,
    monitor: &'p mut M,
    stack: Vec<Frame>,
    root: Mark,
    fails: u64,
    bound: Time,
    best: Option<Solution>,
    solutions: usize,
    timed_out: bool,
    /// Set when a limit, deadline or first-solution stop ends the search.
    stop: bool,
}

impl<R, M> Searcher<'_, '_, '_, R, M>
where
    R: Rng + ?Sized,
    M: SearchMonitor + ?Sized,
{
    fn run(&mut self) -> SearchOutcome {
        let exhausted = match self.params.traversal {
            Traversal::Chron => matches!(self.pass(None), PassEnd::Complete { .. }),
            Traversal::Lds => {
                let max = self
                    .params
                    .max_discrepancy
                    .unwrap_or_else(|| self.state.instance().pair_count());
                let mut exhausted = false;
                for budget in 0..=max {
                    match self.pass(Some(budget)) {
                        PassEnd::Complete { cut: false } => {
                            exhausted = true;
                            break;
                        }
                        PassEnd::Complete { cut: true } if !self.stop => {}
                        _ => break,
                    }
                }
                exhausted
            }
        };
        self.charge();
        SearchOutcome {
            best: self.best.take(),
            exhausted,
            fails: self.fails,
            solutions: self.solutions,
            final_bound: self.bound,
            timed_out: self.timed_out,
        }
    }

    fn charge(&mut self) {
        let work = 1 + self.state.take_work() + self.selector.take_work();
        self.clock.charge(work);
    }

    /// Counts a dead end; true once the fail limit is reached.
    fn fail(&mut self) -> bool {
        self.fails += 1;
        let reached = self.params.fail_limit.is_some_and(|l| self.fails >= l);
        self.stop |= reached;
        reached
    }

    fn end_on_limit(&self, cut: bool) -> PassEnd {
        if self.stack.iter().any(|f| f.open) {
            PassEnd::Stopped
        } else {
            PassEnd::Complete { cut }
        }
    }

    /// Applies `orientation` to `pair`, tolerating an order already asserted by
    /// propagation.
    fn branch(&mut self, pair: PairId, orientation: Orientation) -> Result<(), Fail> {
        match self.state.status(pair) {
            PairStatus::Undecided => self.state.decide(pair, orientation),
            PairStatus::Decided(o) if o == orientation => Ok(()),
            PairStatus::Decided(_) => Err(Fail),
        }
    }

    fn pass(&mut self, budget: Option<usize>) -> PassEnd {
        self.stack.clear();
        self.state.undo_to(self.root);
        if self.state.apply_bound(self.bound).is_err() {
            self.fail();
            return PassEnd::Complete { cut: false };
        }

        let mut cut = false;
        let mut discrepancies = 0;
        loop {
            // Descend from a propagated node.
            self.charge();
            if self.clock.reached(self.params.deadline) {
                self.timed_out = true;
                self.stop = true;
                return PassEnd::Stopped;
            }
            self.monitor.on_node(self.clock);

            let dead_end = match self
                .selector
                .select(&self.state, &self.params.heuristic, &mut *self.rng)
            {
                None => {
                    let solution = self.state.to_solution().expect("leaf is complete");
                    debug_assert!(solution.makespan() <= self.bound);
                    self.bound = solution.makespan() - 1;
                    self.solutions += 1;
                    self.monitor.on_solution(&solution, self.clock);
                    self.best = Some(solution);
                    if self.params.first_solution_only {
                        self.stop = true;
                        return PassEnd::Stopped;
                    }
                    false
                }
                Some(pair) => {
                    let preferred = order_pair(pair, &self.state, self.params.reference);
                    let open = budget.is_none_or(|d| discrepancies < d);
                    cut |= !open;
                    self.stack.push(Frame {
                        pair,
                        alternative: preferred.reversed(),
                        mark: self.state.mark(),
                        discrepancies,
                        open,
                    });
                    if self.state.decide(pair, preferred).is_ok() {
                        continue;
                    }
                    true
                }
            };
            if dead_end && self.fail() {
                return self.end_on_limit(cut);
            }

            // Backtrack to the deepest open alternative.
            loop {
                let Some(frame) = self.stack.last_mut() else {
                    return PassEnd::Complete { cut };
                };
                let mark = frame.mark;
                if !frame.open {
                    self.stack.pop();
                    continue;
                }
                frame.open = false;
                let (pair, alternative) = (frame.pair, frame.alternative);
                discrepancies = frame.discrepancies + 1;
                self.state.undo_to(mark);
                let consistent = self.state.apply_bound(self.bound).is_ok() && self.branch(pair, alternative).is_ok();
                if consistent {
                    break;
                }
                if self.fail() {
                    return self.end_on_limit(cut);
                }
            }
        }
    }
}
