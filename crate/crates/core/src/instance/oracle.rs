//! Exhaustive reference solver for tiny instances.

use super::{makespan_of, Instance, Orientation, Solution, Time};
use crate::error::EnumerationTooLarge;

pub const ENUMERATION_PAIR_LIMIT: usize = 25;

/// Tries all `2^pairs` orientation vectors, skipping cyclic ones, and returns
/// the minimum makespan with the first vector attaining it.
pub fn enumerate_optimal(instance: &Instance) -> Result<(Time, Solution), EnumerationTooLarge> {
    let pairs = instance.pair_count();
    if pairs > ENUMERATION_PAIR_LIMIT {
        return Err(EnumerationTooLarge {
            pairs,
            limit: ENUMERATION_PAIR_LIMIT,
        });
    }

    let decode = |mask: u64| -> Vec<Orientation> {
        (0..pairs)
            .map(|bit| {
                if mask >> bit & 1 == 0 {
                    Orientation::FirstBeforeSecond
                } else {
                    Orientation::SecondBeforeFirst
                }
            })
            .collect()
    };

    let mut best: Option<(Time, u64)> = None;
    for mask in 0..(1u64 << pairs) {
        if let Ok(value) = makespan_of(instance, &decode(mask)) {
            if best.is_none_or(|(b, _)| value < b) {
                best = Some((value, mask));
            }
        }
    }
    // Orienting every pair by job index is always acyclic, so some vector exists.
    let (value, mask) = best.expect("at least one acyclic orientation");
    let solution = Solution::new(instance, decode(mask)).expect("acyclic by construction");
    Ok((value, solution))
}
