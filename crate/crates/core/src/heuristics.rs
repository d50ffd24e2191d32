//! Contention-based pair selection and value ordering.
//!
//! Each unsequenced activity (one with an undecided pair on its machine)
//! contributes an individual demand at time `t`: the probability that it is
//! running at `t` when its start is drawn uniformly from `[est, lst]`. The
//! contention of a `(machine, t)` point is the sum of those demands. The
//! selector ranks points by contention, draws one uniformly from the most
//! critical fraction, and branches on the undecided pair of that machine with
//! the largest summed demand at `t`.

use rand::Rng;

use crate::engine::{PairStatus, SearchState};
use crate::instance::{ActivityId, Orientation, PairId, Solution, Time};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeuristicConfig {
    /// Share of the ranked `(machine, time)` points eligible for the random draw.
    pub critical_fraction: f64,
    /// When false the top-ranked point is always taken and no randomness is used.
    pub randomized: bool,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        HeuristicConfig {
            critical_fraction: 0.10,
            randomized: true,
        }
    }
}

impl HeuristicConfig {
    pub fn deterministic() -> HeuristicConfig {
        HeuristicConfig {
            randomized: false,
            ..HeuristicConfig::default()
        }
    }
}

/// A ranked `(machine, time)` point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContentionPoint {
    pub machine: usize,
    pub time: Time,
    pub contention: f64,
}

/// Probability that an activity of length `duration` started uniformly in
/// `[est, lct - duration]` is executing at integer time `t`.
pub fn individual_demand(duration: Time, est: Time, lct: Time, t: Time) -> f64 {
    let lst = lct - duration;
    debug_assert!(est <= lst, "window must be live");
    let lo = (t - duration + 1).max(est);
    let hi = t.min(lst);
    if hi < lo {
        0.0
    } else {
        (hi - lo + 1) as f64 / (lst - est + 1) as f64
    }
}

#[inline]
fn demand_in(state: &SearchState, a: ActivityId, t: Time) -> f64 {
    individual_demand(state.instance().duration(a), state.est(a), state.lct(a), t)
}

/// Contentions are rounded to multiples of `1 / SNAP` so that float noise
/// cannot split ties.
const SNAP: f64 = 1e9;
const LANES: usize = 4;

/// Contention points of one machine, valid for one state revision.
#[derive(Debug, Default)]
struct MachineProfile {
    revision: Option<(u64, u64)>,
    points: Vec<(Time, u64)>,
}

/// One activity's window in float form for the contention sweep.
#[derive(Debug, Default, Clone, Copy)]
struct Lane {
    est: f64,
    lst: f64,
    /// Duration minus one.
    span: f64,
    weight: f64,
}

/// Sort key of a point: larger contention first, then smaller `(machine, time)`.
#[inline]
fn encode(machine: usize, time: Time, units: u64) -> u128 {
    ((!units as u128) << 64) | ((machine as u128) << 40) | time as u128
}

fn decode(key: u128) -> (usize, Time, u64) {
    let units = !((key >> 64) as u64);
    let machine = ((key >> 40) & 0xff_ffff) as usize;
    let time = (key & ((1 << 40) - 1)) as Time;
    (machine, time, units)
}

/// Reusable buffers for [`PairSelector::select`].
#[derive(Debug, Default)]
pub struct PairSelector {
    points: Vec<ContentionPoint>,
    keys: Vec<u128>,
    times: Vec<Time>,
    lanes: Vec<Lane>,
    cache: Vec<MachineProfile>,
    work: u64,
}

impl PairSelector {
    pub fn new() -> PairSelector {
        PairSelector::default()
    }

    /// Returns and resets the work counter.
    pub fn take_work(&mut self) -> u64 {
        std::mem::take(&mut self.work)
    }

    /// Contention at every event point of every machine that still has an
    /// undecided pair, sorted most critical first. Ties go to the smaller
    /// `(machine, time)`.
    pub fn rank_points(&mut self, state: &SearchState) -> &[ContentionPoint] {
        self.collect_points(state);
        self.keys.sort_unstable();
        self.points.clear();
        self.points.extend(self.keys.iter().map(|&key| {
            let (machine, time, units) = decode(key);
            ContentionPoint {
                machine,
                time,
                contention: units as f64 / SNAP,
            }
        }));
        &self.points
    }

    fn collect_points(&mut self, state: &SearchState) {
        let instance = state.instance();
        self.keys.clear();
        self.work += instance.machine_count() as u64;
        self.cache
            .resize_with(instance.machine_count(), MachineProfile::default);
        for machine in 0..instance.machine_count() {
            if state.undecided_on_machine(machine) == 0 {
                continue;
            }
            let revision = state.machine_revision(machine);
            if self.cache[machine].revision != Some(revision) {
                self.profile(state, machine);
                self.cache[machine].revision = Some(revision);
            }
            self.keys.extend(
                self.cache[machine]
                    .points
                    .iter()
                    .map(|&(time, units)| encode(machine, time, units)),
            );
        }
    }

    /// Recomputes the contention at the event points of one machine.
    fn profile(&mut self, state: &SearchState, machine: usize) {
        let instance = state.instance();
        self.times.clear();
        self.lanes.clear();
        for &a in instance.machine_activities(machine) {
            if state.undecided_of_activity(a) == 0 {
                continue;
            }
            let (est, lst) = (state.est(a), state.lst(a));
            self.times.push(est);
            self.times.push(lst);
            self.lanes.push(Lane {
                est: est as f64,
                lst: lst as f64,
                span: (instance.duration(a) - 1) as f64,
                weight: 1.0 / (lst - est + 1) as f64,
            });
        }
        self.times.sort_unstable();
        self.times.dedup();
        let members = self.lanes.len();
        // Padding lanes carry zero weight.
        while !self.lanes.len().is_multiple_of(LANES) {
            self.lanes.push(Lane::default());
        }
        self.work += (self.times.len() * members) as u64;

        let out = &mut self.cache[machine].points;
        out.clear();
        for &t in &self.times {
            let tf = t as f64;
            let mut acc = [0.0; LANES];
            for chunk in self.lanes.chunks_exact(LANES) {
                for (sum, lane) in acc.iter_mut().zip(chunk) {
                    let hi = if tf < lane.lst { tf } else { lane.lst };
                    let lo = if tf - lane.span > lane.est {
                        tf - lane.span
                    } else {
                        lane.est
                    };
                    let covered = hi - lo + 1.0;
                    *sum += if covered > 0.0 { covered * lane.weight } else { 0.0 };
                }
            }
            let units = ((acc[0] + acc[1]) + (acc[2] + acc[3])) * SNAP;
            out.push((t, if units > 0.0 { units.round() as u64 } else { 0 }));
        }
    }

    /// Chooses the next pair to branch on; `None` iff every pair is decided.
    pub fn select<R: Rng + ?Sized>(
        &mut self,
        state: &SearchState,
        config: &HeuristicConfig,
        rng: &mut R,
    ) -> Option<PairId> {
        if state.all_decided() {
            return None;
        }
        self.collect_points(state);
        let ranked = self.keys.len();
        self.work += ranked as u64;
        debug_assert!(ranked > 0);
        let top = if config.randomized {
            ((config.critical_fraction * ranked as f64).ceil() as usize).clamp(1, ranked)
        } else {
            1
        };
        // The draw is uniform over the top set, so only membership matters:
        // partition around rank `top - 1` and draw a position below it.
        self.keys.select_nth_unstable(top - 1);
        let pick = if top > 1 { rng.random_range(0..top) } else { 0 };
        let (machine, time, _) = decode(self.keys[pick]);

        let instance = state.instance();
        let mut best: Option<(f64, PairId)> = None;
        for pair in instance.machine_pairs(machine) {
            if !state.is_undecided(pair) {
                continue;
            }
            let p = instance.pair(pair);
            let score = demand_in(state, p.first, time) + demand_in(state, p.second, time);
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, pair));
            }
        }
        self.work += instance.machine_pairs(machine).len() as u64;
        best.map(|(_, pair)| pair)
    }
}

/// Convenience wrapper around a fresh [`PairSelector`].
pub fn select_pair<R: Rng + ?Sized>(state: &SearchState, config: &HeuristicConfig, rng: &mut R) -> Option<PairId> {
    PairSelector::new().select(state, config, rng)
}

/// Orientation to try first on `pair`.
///
/// The reference solution's order wins while it is still feasible. Otherwise
/// the activity with the smaller earliest start goes first (then smaller latest
/// completion, then smaller id), restricted to feasible orders when one is.
pub fn order_pair(pair: PairId, state: &SearchState, reference: Option<&Solution>) -> Orientation {
    if let PairStatus::Decided(o) = state.status(pair) {
        return o;
    }
    if let Some(reference) = reference {
        let preferred = reference.orientation(pair);
        if state.is_feasible(pair, preferred) {
            return preferred;
        }
        return preferred.reversed();
    }
    let p = state.instance().pair(pair);
    let key = |a: ActivityId| (state.est(a), state.lct(a), a);
    let natural = if key(p.first) <= key(p.second) {
        Orientation::FirstBeforeSecond
    } else {
        Orientation::SecondBeforeFirst
    };
    if !state.is_feasible(pair, natural) && state.is_feasible(pair, natural.reversed()) {
        natural.reversed()
    } else {
        natural
    }
}
