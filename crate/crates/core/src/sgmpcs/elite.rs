use rand::Rng;

use super::config::{Diversity, EngineConfig};
use crate::engine::{search, Clock, SearchParams};
use crate::heuristics::HeuristicConfig;
use crate::instance::{Instance, Solution, Time};
use crate::metrics::hamming;

/// Where the search that produced a candidate started.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StartContext {
    Empty,
    /// Guided by the elite member at this index.
    Guided(usize),
}

/// Fixed-capacity multiset of good solutions.
#[derive(Debug, Clone, PartialEq)]
pub struct EliteSet {
    members: Vec<Solution>,
    policy: Diversity,
}

impl EliteSet {
    /// Panics on an empty member list.
    pub fn from_members(members: Vec<Solution>, policy: Diversity) -> EliteSet {
        assert!(!members.is_empty(), "elite set needs at least one member");
        EliteSet { members, policy }
    }

    /// Builds a set of `capacity` members from candidates in generation order.
    ///
    /// Low and medium keep the cheapest candidates. High inserts the first
    /// `capacity` and lets each later candidate that beats the worst member
    /// replace its closest member. Duplicates fill any shortfall.
    pub fn from_candidates(candidates: Vec<Solution>, capacity: usize, policy: Diversity) -> EliteSet {
        assert!(capacity > 0 && !candidates.is_empty());
        let mut members = match policy {
            Diversity::Low | Diversity::Medium => {
                let mut sorted = candidates;
                sorted.sort_by_key(Solution::makespan);
                sorted.truncate(capacity);
                sorted
            }
            Diversity::High => {
                let split = capacity.min(candidates.len());
                let mut rest = candidates;
                let later = rest.split_off(split);
                let mut elite = EliteSet { members: rest, policy };
                for candidate in later {
                    if candidate.makespan() < elite.worst().makespan() {
                        let slot = elite.closest(&candidate);
                        elite.members[slot] = candidate;
                    }
                }
                elite.members
            }
        };
        let available = members.len();
        for i in 0..capacity - available {
            members.push(members[i % available].clone());
        }
        EliteSet { members, policy }
    }

    pub fn policy(&self) -> Diversity {
        self.policy
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Solution] {
        &self.members
    }

    pub fn member(&self, index: usize) -> &Solution {
        &self.members[index]
    }

    /// Index of the cheapest member, lowest index on ties.
    pub fn best_index(&self) -> usize {
        extreme(&self.members, |a, b| a < b)
    }

    /// Index of the most expensive member, lowest index on ties.
    pub fn worst_index(&self) -> usize {
        extreme(&self.members, |a, b| a > b)
    }

    pub fn best(&self) -> &Solution {
        &self.members[self.best_index()]
    }

    pub fn worst(&self) -> &Solution {
        &self.members[self.worst_index()]
    }

    /// Member nearest to `candidate` in Hamming distance, lowest index on ties.
    pub fn closest(&self, candidate: &Solution) -> usize {
        let mut best = (usize::MAX, 0);
        for (i, member) in self.members.iter().enumerate() {
            let d = hamming(member, candidate).expect("elite members share the instance");
            if d < best.0 {
                best = (d, i);
            }
        }
        best.1
    }

    /// Applies the replacement rule of the set's policy. Returns the replaced
    /// slot, or `None` when the candidate was rejected.
    pub fn replace(&mut self, candidate: Solution, context: StartContext) -> Option<usize> {
        let cost = candidate.makespan();
        let worst = self.worst_index();
        let slot = match (self.policy, context) {
            (Diversity::Low, _) | (Diversity::Medium, StartContext::Empty) => {
                (cost < self.members[worst].makespan()).then_some(worst)
            }
            (Diversity::Medium | Diversity::High, StartContext::Guided(r)) => {
                (cost < self.members[r].makespan()).then_some(r)
            }
            (Diversity::High, StartContext::Empty) => {
                (cost < self.members[worst].makespan()).then(|| self.closest(&candidate))
            }
        }?;
        self.members[slot] = candidate;
        Some(slot)
    }
}

fn extreme(members: &[Solution], better: impl Fn(Time, Time) -> bool) -> usize {
    let mut index = 0;
    for (i, m) in members.iter().enumerate().skip(1) {
        if better(m.makespan(), members[index].makespan()) {
            index = i;
        }
    }
    index
}

/// Seeds the elite set from unbounded randomized descents. Draws at least
/// `capacity` candidates so that large sets are not padded needlessly.
pub fn init_elite<R: Rng + ?Sized>(
    instance: &Instance,
    config: &EngineConfig,
    rng: &mut R,
    clock: &mut Clock,
) -> EliteSet {
    let heuristic = HeuristicConfig {
        critical_fraction: config.critical_fraction,
        randomized: true,
    };
    let params = SearchParams::new(instance.horizon())
        .traversal(crate::engine::Traversal::Chron)
        .heuristic(heuristic)
        .first_solution_only();
    let samples = config.init_samples.max(config.elite_size);
    let candidates = (0..samples)
        .map(|_| {
            search(instance, &params, rng, clock, &mut ())
                .best
                .expect("an unbounded descent always completes")
        })
        .collect();
    EliteSet::from_candidates(candidates, config.elite_size, config.diversity)
}
