//! Time windows, pair orientations and their propagation.
//!
//! Propagation runs to a fixpoint of three rules:
//! - precedence bounds along every job arc and decided pair,
//! - the makespan bound on the latest completion of each job's last activity,
//! - pairwise elimination: an undecided pair whose order `a → b` cannot fit
//!   (`est(a) + dur(a) + dur(b) > lct(b)`) loses that order; losing both orders
//!   fails, losing one asserts the other.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::instance::{ActivityId, Instance, Orientation, PairId, Solution, Time};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairStatus {
    Undecided,
    Decided(Orientation),
}

/// A dead end: some window emptied or a pair lost both orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fail;

#[derive(Debug, Clone, Copy)]
pub struct TimeWindow {
    pub est: Time,
    pub lct: Time,
}

#[derive(Debug, Clone, Copy)]
enum TrailEntry {
    Est(ActivityId, Time),
    Lct(ActivityId, Time),
    Pair(PairId),
}

/// Position in the trail to return to on backtrack.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mark(usize);

pub struct SearchState<'a> {
    instance: &'a Instance,
    est: Vec<Time>,
    lct: Vec<Time>,
    status: Vec<PairStatus>,
    undecided: usize,
    undecided_on_machine: Vec<usize>,
    undecided_of_activity: Vec<usize>,
    bound: Time,
    trail: Vec<TrailEntry>,
    queue: Vec<ActivityId>,
    queued: Vec<bool>,
    work: u64,
    id: u64,
    tick: u64,
    revision: Vec<u64>,
}

static NEXT_STATE_ID: AtomicU64 = AtomicU64::new(0);

impl<'a> SearchState<'a> {
    /// Root state with windows `[0, horizon]` and job chains propagated.
    pub fn new(instance: &'a Instance) -> SearchState<'a> {
        let count = instance.activity_count();
        let horizon = instance.horizon();
        let per_machine = instance.job_count() * (instance.job_count() - 1) / 2;
        let mut state = SearchState {
            instance,
            est: vec![0; count],
            lct: vec![horizon; count],
            status: vec![PairStatus::Undecided; instance.pair_count()],
            undecided: instance.pair_count(),
            undecided_on_machine: vec![per_machine; instance.machine_count()],
            undecided_of_activity: vec![instance.job_count() - 1; count],
            bound: horizon,
            trail: Vec::new(),
            queue: Vec::with_capacity(count),
            queued: vec![false; count],
            work: 0,
            id: NEXT_STATE_ID.fetch_add(1, Ordering::Relaxed),
            tick: 0,
            revision: vec![0; instance.machine_count()],
        };
        for a in 0..count {
            state.enqueue(a);
        }
        state
            .propagate()
            .expect("job chains alone always fit within the horizon");
        state.trail.clear();
        state
    }

    #[inline]
    pub fn instance(&self) -> &'a Instance {
        self.instance
    }

    #[inline]
    pub fn est(&self, a: ActivityId) -> Time {
        self.est[a]
    }

    #[inline]
    pub fn lct(&self, a: ActivityId) -> Time {
        self.lct[a]
    }

    /// Latest start time.
    #[inline]
    pub fn lst(&self, a: ActivityId) -> Time {
        self.lct[a] - self.instance.duration(a)
    }

    #[inline]
    pub fn window(&self, a: ActivityId) -> TimeWindow {
        TimeWindow {
            est: self.est[a],
            lct: self.lct[a],
        }
    }

    #[inline]
    pub fn status(&self, pair: PairId) -> PairStatus {
        self.status[pair]
    }

    #[inline]
    pub fn is_undecided(&self, pair: PairId) -> bool {
        self.status[pair] == PairStatus::Undecided
    }

    #[inline]
    pub fn undecided_count(&self) -> usize {
        self.undecided
    }

    #[inline]
    pub fn undecided_on_machine(&self, machine: usize) -> usize {
        self.undecided_on_machine[machine]
    }

    /// Number of undecided pairs `a` belongs to; zero means `a` is sequenced.
    #[inline]
    pub fn undecided_of_activity(&self, a: ActivityId) -> usize {
        self.undecided_of_activity[a]
    }

    #[inline]
    pub fn all_decided(&self) -> bool {
        self.undecided == 0
    }

    #[inline]
    pub fn bound(&self) -> Time {
        self.bound
    }

    #[inline]
    pub fn mark(&self) -> Mark {
        Mark(self.trail.len())
    }

    /// Changes whenever a window, a pair or the sequenced status of an
    /// activity on `machine` changes. Unique across states, so a cached value
    /// never matches a different state.
    #[inline]
    pub fn machine_revision(&self, machine: usize) -> (u64, u64) {
        (self.id, self.revision[machine])
    }

    #[inline]
    fn touch(&mut self, machine: usize) {
        self.tick += 1;
        self.revision[machine] = self.tick;
    }

    #[inline]
    fn touch_activity(&mut self, a: ActivityId) {
        self.touch(self.instance.activity(a).machine);
    }

    /// Returns and resets the work counter.
    pub fn take_work(&mut self) -> u64 {
        std::mem::take(&mut self.work)
    }

    /// Whether `orientation` of `pair` still fits the current windows.
    pub fn is_feasible(&self, pair: PairId, orientation: Orientation) -> bool {
        match self.status[pair] {
            PairStatus::Decided(o) => o == orientation,
            PairStatus::Undecided => {
                let (before, after) = orientation.arc(self.instance.pair(pair));
                self.fits_before(before, after)
            }
        }
    }

    #[inline]
    fn fits_before(&self, before: ActivityId, after: ActivityId) -> bool {
        self.est[before] + self.instance.duration(before) <= self.lct[after] - self.instance.duration(after)
    }

    /// Caps every completion time at `bound` and propagates.
    pub fn apply_bound(&mut self, bound: Time) -> Result<(), Fail> {
        self.bound = bound;
        let m = self.instance.machine_count();
        for job in 0..self.instance.job_count() {
            let last = self.instance.activity_id(job, m - 1);
            if self.set_lct(last, bound).is_err() {
                self.clear_queue();
                return Err(Fail);
            }
        }
        self.propagate()
    }

    /// Asserts an orientation for an undecided pair and propagates.
    pub fn decide(&mut self, pair: PairId, orientation: Orientation) -> Result<(), Fail> {
        debug_assert!(self.is_undecided(pair));
        self.assign(pair, orientation);
        let p = *self.instance.pair(pair);
        self.enqueue(p.first);
        self.enqueue(p.second);
        self.propagate()
    }

    fn assign(&mut self, pair: PairId, orientation: Orientation) {
        let p = *self.instance.pair(pair);
        self.status[pair] = PairStatus::Decided(orientation);
        self.undecided -= 1;
        self.undecided_on_machine[p.machine] -= 1;
        self.undecided_of_activity[p.first] -= 1;
        self.undecided_of_activity[p.second] -= 1;
        self.trail.push(TrailEntry::Pair(pair));
        self.touch(p.machine);
    }

    #[inline]
    fn enqueue(&mut self, a: ActivityId) {
        if !self.queued[a] {
            self.queued[a] = true;
            self.queue.push(a);
        }
    }

    #[inline]
    pub(crate) fn set_est(&mut self, a: ActivityId, value: Time) -> Result<(), Fail> {
        if value > self.est[a] {
            self.trail.push(TrailEntry::Est(a, self.est[a]));
            self.est[a] = value;
            self.touch_activity(a);
            if value + self.instance.duration(a) > self.lct[a] {
                return Err(Fail);
            }
            self.enqueue(a);
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn set_lct(&mut self, a: ActivityId, value: Time) -> Result<(), Fail> {
        if value < self.lct[a] {
            self.trail.push(TrailEntry::Lct(a, self.lct[a]));
            self.lct[a] = value;
            self.touch_activity(a);
            if self.est[a] + self.instance.duration(a) > value {
                return Err(Fail);
            }
            self.enqueue(a);
        }
        Ok(())
    }

    /// Runs the propagation rules to a fixpoint. On failure the queue is
    /// cleared and the caller must backtrack.
    pub fn propagate(&mut self) -> Result<(), Fail> {
        let result = self.run_queue();
        if result.is_err() {
            self.clear_queue();
        }
        result
    }

    fn clear_queue(&mut self) {
        for a in self.queue.drain(..) {
            self.queued[a] = false;
        }
    }

    fn run_queue(&mut self) -> Result<(), Fail> {
        let instance = self.instance;
        while let Some(a) = self.queue.pop() {
            self.queued[a] = false;
            let dur_a = instance.duration(a);
            if let Some(next) = instance.job_successor(a) {
                self.set_est(next, self.est[a] + dur_a)?;
            }
            if let Some(prev) = instance.job_predecessor(a) {
                self.set_lct(prev, self.lct[a] - dur_a)?;
            }

            let machine = instance.activity(a).machine;
            let peers = instance.machine_activities(machine);
            self.work += peers.len() as u64;
            for &b in peers {
                if b == a {
                    continue;
                }
                let pair = instance.pair_between(a, b);
                let a_first = Orientation::placing_first(instance.pair(pair), a);
                match self.status[pair] {
                    PairStatus::Decided(o) if o == a_first => {
                        self.set_est(b, self.est[a] + dur_a)?;
                    }
                    PairStatus::Decided(_) => {
                        self.set_lct(b, self.lct[a] - dur_a)?;
                    }
                    PairStatus::Undecided => {
                        let ab = self.fits_before(a, b);
                        let ba = self.fits_before(b, a);
                        match (ab, ba) {
                            (true, true) => {}
                            (false, false) => return Err(Fail),
                            (true, false) => {
                                self.assign(pair, a_first);
                                self.set_est(b, self.est[a] + dur_a)?;
                                self.set_lct(a, self.lct[b] - instance.duration(b))?;
                            }
                            (false, true) => {
                                self.assign(pair, a_first.reversed());
                                self.set_lct(b, self.lct[a] - dur_a)?;
                                self.set_est(a, self.est[b] + instance.duration(b))?;
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Restores the state recorded at `mark`.
    pub fn undo_to(&mut self, mark: Mark) {
        self.work += (self.trail.len() - mark.0) as u64;
        while self.trail.len() > mark.0 {
            match self.trail.pop().expect("trail longer than mark") {
                TrailEntry::Est(a, old) => {
                    self.est[a] = old;
                    self.touch_activity(a);
                }
                TrailEntry::Lct(a, old) => {
                    self.lct[a] = old;
                    self.touch_activity(a);
                }
                TrailEntry::Pair(pair) => {
                    let p = *self.instance.pair(pair);
                    self.touch(p.machine);
                    self.status[pair] = PairStatus::Undecided;
                    self.undecided += 1;
                    self.undecided_on_machine[p.machine] += 1;
                    self.undecided_of_activity[p.first] += 1;
                    self.undecided_of_activity[p.second] += 1;
                }
            }
        }
    }

    /// The complete solution at a leaf.
    pub fn to_solution(&self) -> Option<Solution> {
        if !self.all_decided() {
            return None;
        }
        let orientations = self
            .status
            .iter()
            .map(|s| match s {
                PairStatus::Decided(o) => *o,
                PairStatus::Undecided => unreachable!(),
            })
            .collect();
        Some(Solution::new(self.instance, orientations).expect("propagated leaf is acyclic"))
    }

    /// Largest earliest completion time; equals the makespan at a leaf.
    pub fn earliest_makespan(&self) -> Time {
        (0..self.instance.activity_count())
            .map(|a| self.est[a] + self.instance.duration(a))
            .max()
            .unwrap_or(0)
    }
}
