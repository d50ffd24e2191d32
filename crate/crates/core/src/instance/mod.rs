//! Job shop problem model.
//!
//! An `n × m` instance has `n` jobs, each a chain of `m` activities visiting every
//! machine exactly once. Activities are identified by a global id
//! `job * m + position`. Every pair of activities sharing a machine forms a
//! [`DisjunctivePair`]; a [`Solution`] orients all of them.

mod bounds;
mod generate;
mod graph;
mod oracle;
mod parse;

pub use bounds::{BestKnown, Bounds};
pub use generate::{generate_batch, generate_workflow, WorkflowParams};
pub use graph::{head_times, makespan_of};
pub use oracle::{enumerate_optimal, ENUMERATION_PAIR_LIMIT};
pub use parse::{detect_format, parse_instance, parse_orlib, parse_taillard, to_orlib, InstanceFormat};

use serde::{Deserialize, Serialize};

use crate::error::{InstanceError, OrientationError};

/// Integer time unit used for durations, windows and makespans.
pub type Time = i64;

pub type ActivityId = usize;
pub type PairId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Activity {
    pub job: usize,
    pub position: usize,
    pub machine: usize,
    pub duration: Time,
}

/// Two activities on the same machine, `first < second` by global id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DisjunctivePair {
    pub machine: usize,
    pub first: ActivityId,
    pub second: ActivityId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    FirstBeforeSecond,
    SecondBeforeFirst,
}

impl Orientation {
    #[inline]
    pub fn reversed(self) -> Orientation {
        match self {
            Orientation::FirstBeforeSecond => Orientation::SecondBeforeFirst,
            Orientation::SecondBeforeFirst => Orientation::FirstBeforeSecond,
        }
    }

    /// The orientation that schedules `before` ahead of the other member of `pair`.
    #[inline]
    pub fn placing_first(pair: &DisjunctivePair, before: ActivityId) -> Orientation {
        if before == pair.first {
            Orientation::FirstBeforeSecond
        } else {
            Orientation::SecondBeforeFirst
        }
    }

    /// `(predecessor, successor)` implied by this orientation of `pair`.
    #[inline]
    pub fn arc(self, pair: &DisjunctivePair) -> (ActivityId, ActivityId) {
        match self {
            Orientation::FirstBeforeSecond => (pair.first, pair.second),
            Orientation::SecondBeforeFirst => (pair.second, pair.first),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    name: String,
    jobs: usize,
    machines: usize,
    activities: Vec<Activity>,
    /// `on_machine[k][j]` is the activity of job `j` on machine `k`.
    on_machine: Vec<Vec<ActivityId>>,
    pairs: Vec<DisjunctivePair>,
    /// First pair id of each machine's block.
    pair_offset: Vec<PairId>,
}

impl Instance {
    /// Builds an instance from per-job routings of `(machine, duration)`.
    pub fn new(name: impl Into<String>, routings: &[Vec<(usize, Time)>]) -> Result<Instance, InstanceError> {
        let jobs = routings.len();
        let machines = routings.first().map_or(0, Vec::len);
        if jobs == 0 || machines == 0 {
            return Err(InstanceError::EmptyDimension);
        }

        let mut activities = Vec::with_capacity(jobs * machines);
        let mut on_machine = vec![vec![usize::MAX; jobs]; machines];
        for (job, routing) in routings.iter().enumerate() {
            if routing.len() != machines {
                return Err(InstanceError::TokenCount {
                    context: format!("job {job}"),
                    expected: 2 * machines,
                    found: 2 * routing.len(),
                });
            }
            for (position, &(machine, duration)) in routing.iter().enumerate() {
                if machine >= machines {
                    return Err(InstanceError::MachineOutOfRange {
                        job,
                        position,
                        machine: machine as i64,
                    });
                }
                if duration < 1 {
                    return Err(InstanceError::InvalidDuration {
                        job,
                        position,
                        duration,
                    });
                }
                if on_machine[machine][job] != usize::MAX {
                    return Err(InstanceError::DuplicateMachine { job, machine });
                }
                on_machine[machine][job] = activities.len();
                activities.push(Activity {
                    job,
                    position,
                    machine,
                    duration,
                });
            }
        }

        let mut pairs = Vec::with_capacity(machines * jobs * (jobs - 1) / 2);
        let mut pair_offset = Vec::with_capacity(machines);
        for (machine, members) in on_machine.iter().enumerate() {
            pair_offset.push(pairs.len());
            for i in 0..jobs {
                for j in (i + 1)..jobs {
                    pairs.push(DisjunctivePair {
                        machine,
                        first: members[i],
                        second: members[j],
                    });
                }
            }
        }

        Ok(Instance {
            name: name.into(),
            jobs,
            machines,
            activities,
            on_machine,
            pairs,
            pair_offset,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Instance {
        self.name = name.into();
        self
    }

    #[inline]
    pub fn job_count(&self) -> usize {
        self.jobs
    }

    #[inline]
    pub fn machine_count(&self) -> usize {
        self.machines
    }

    #[inline]
    pub fn activity_count(&self) -> usize {
        self.activities.len()
    }

    #[inline]
    pub fn activities(&self) -> &[Activity] {
        &self.activities
    }

    #[inline]
    pub fn activity(&self, id: ActivityId) -> &Activity {
        &self.activities[id]
    }

    #[inline]
    pub fn duration(&self, id: ActivityId) -> Time {
        self.activities[id].duration
    }

    #[inline]
    pub fn activity_id(&self, job: usize, position: usize) -> ActivityId {
        job * self.machines + position
    }

    /// Activities on `machine`, indexed by job.
    #[inline]
    pub fn machine_activities(&self, machine: usize) -> &[ActivityId] {
        &self.on_machine[machine]
    }

    #[inline]
    pub fn pairs(&self) -> &[DisjunctivePair] {
        &self.pairs
    }

    #[inline]
    pub fn pair(&self, id: PairId) -> &DisjunctivePair {
        &self.pairs[id]
    }

    #[inline]
    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    /// Pair ids of `machine` occupy a contiguous block.
    #[inline]
    pub fn machine_pairs(&self, machine: usize) -> std::ops::Range<PairId> {
        let start = self.pair_offset[machine];
        start..start + self.jobs * (self.jobs - 1) / 2
    }

    /// Id of the pair formed by two distinct activities on the same machine.
    #[inline]
    pub fn pair_between(&self, a: ActivityId, b: ActivityId) -> PairId {
        let (ja, jb) = (self.activities[a].job, self.activities[b].job);
        debug_assert_eq!(self.activities[a].machine, self.activities[b].machine);
        debug_assert_ne!(ja, jb);
        let (i, j) = if ja < jb { (ja, jb) } else { (jb, ja) };
        let n = self.jobs;
        self.pair_offset[self.activities[a].machine] + i * (2 * n - i - 1) / 2 + (j - i - 1)
    }

    /// Job predecessor of `id`, if any.
    #[inline]
    pub fn job_predecessor(&self, id: ActivityId) -> Option<ActivityId> {
        (self.activities[id].position > 0).then(|| id - 1)
    }

    #[inline]
    pub fn job_successor(&self, id: ActivityId) -> Option<ActivityId> {
        (self.activities[id].position + 1 < self.machines).then(|| id + 1)
    }

    /// Sum of every activity duration; no semi-active schedule is longer.
    pub fn horizon(&self) -> Time {
        self.activities.iter().map(|a| a.duration).sum()
    }

    /// Larger of the longest job and the most loaded machine.
    pub fn trivial_lower_bound(&self) -> Time {
        let job_max = (0..self.jobs)
            .map(|j| {
                (0..self.machines)
                    .map(|p| self.activities[self.activity_id(j, p)].duration)
                    .sum::<Time>()
            })
            .max()
            .unwrap_or(0);
        let machine_max = self
            .on_machine
            .iter()
            .map(|ids| ids.iter().map(|&a| self.activities[a].duration).sum::<Time>())
            .max()
            .unwrap_or(0);
        job_max.max(machine_max)
    }

    /// Per-job `(machine, duration)` routings, the inverse of [`Instance::new`].
    pub fn routings(&self) -> Vec<Vec<(usize, Time)>> {
        self.activities
            .chunks(self.machines)
            .map(|job| job.iter().map(|a| (a.machine, a.duration)).collect())
            .collect()
    }
}

/// A complete orientation of every disjunctive pair together with its makespan.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Solution {
    orientations: Vec<Orientation>,
    makespan: Time,
}

impl Solution {
    /// Validates `orientations` against `instance` and computes the makespan.
    pub fn new(instance: &Instance, orientations: Vec<Orientation>) -> Result<Solution, OrientationError> {
        if orientations.len() != instance.pair_count() {
            return Err(OrientationError::WrongLength {
                expected: instance.pair_count(),
                found: orientations.len(),
            });
        }
        let makespan = makespan_of(instance, &orientations)?;
        Ok(Solution { orientations, makespan })
    }

    #[inline]
    pub fn makespan(&self) -> Time {
        self.makespan
    }

    #[inline]
    pub fn orientations(&self) -> &[Orientation] {
        &self.orientations
    }

    #[inline]
    pub fn orientation(&self, pair: PairId) -> Orientation {
        self.orientations[pair]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_by_two() -> Instance {
        Instance::new("t", &[vec![(0, 3), (1, 4)], vec![(1, 2), (0, 6)]]).unwrap()
    }

    #[test]
    fn pair_count_matches_formula() {
        let inst = two_by_two();
        assert_eq!(inst.pair_count(), 2);
        let big = generate_workflow(&WorkflowParams::new(7, 4), 3).unwrap();
        assert_eq!(big.pair_count(), 4 * 7 * 6 / 2);
    }

    #[test]
    fn pair_between_is_consistent_with_pair_list() {
        let inst = generate_workflow(&WorkflowParams::new(5, 4), 11).unwrap();
        for (id, pair) in inst.pairs().iter().enumerate() {
            assert!(pair.first < pair.second);
            assert_eq!(inst.pair_between(pair.first, pair.second), id);
            assert_eq!(inst.pair_between(pair.second, pair.first), id);
            assert_eq!(inst.activity(pair.first).machine, pair.machine);
            assert_eq!(inst.activity(pair.second).machine, pair.machine);
        }
    }

    #[test]
    fn rejects_duplicate_machine() {
        let err = Instance::new("x", &[vec![(0, 5), (0, 7)]]).unwrap_err();
        assert_eq!(err, InstanceError::DuplicateMachine { job: 0, machine: 0 });
    }

    #[test]
    fn rejects_ragged_routings() {
        assert!(matches!(
            Instance::new("x", &[vec![(0, 5), (1, 7)], vec![(0, 1)]]),
            Err(InstanceError::TokenCount { .. })
        ));
    }

    #[test]
    fn solution_rejects_wrong_length() {
        let inst = two_by_two();
        assert!(matches!(
            Solution::new(&inst, vec![Orientation::FirstBeforeSecond]),
            Err(OrientationError::WrongLength { .. })
        ));
    }

    #[test]
    fn trivial_bound() {
        let inst = two_by_two();
        // jobs: 7 and 8; machines: 3+6 and 4+2
        assert_eq!(inst.trivial_lower_bound(), 9);
        assert_eq!(inst.horizon(), 15);
    }
}
