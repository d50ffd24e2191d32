//! Fail-limit sequences for successive restarts.

use serde::{Deserialize, Serialize};

/// Luby's universal sequence `1, 1, 2, 1, 1, 2, 4, ...` for a 1-based index.
pub fn luby(index: u64) -> u64 {
    assert!(index >= 1, "luby index is 1-based");
    let mut i = index;
    loop {
        // smallest k with i <= 2^k - 1
        let k = 64 - i.leading_zeros();
        if i == (1u64 << k) - 1 {
            return 1u64 << (k - 1);
        }
        i -= (1u64 << (k - 1)) - 1;
    }
}

pub const POLY_INCREMENT: u64 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LimitSequence {
    Luby,
    Poly,
}

/// Produces the fail limit of each successive search within a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailLimitSchedule {
    Luby { index: u64, multiplier: u64 },
    Poly { current: u64, started: bool },
}

impl FailLimitSchedule {
    pub fn new(kind: LimitSequence) -> FailLimitSchedule {
        match kind {
            LimitSequence::Luby => FailLimitSchedule::luby_scaled(1),
            LimitSequence::Poly => FailLimitSchedule::Poly {
                current: POLY_INCREMENT,
                started: false,
            },
        }
    }

    pub fn luby_scaled(multiplier: u64) -> FailLimitSchedule {
        FailLimitSchedule::Luby {
            index: 0,
            multiplier: multiplier.max(1),
        }
    }

    /// Limit for the next search. `improved` reports whether the previous search
    /// found a new best solution; only the Poly sequence looks at it.
    pub fn next_limit(&mut self, improved: bool) -> u64 {
        match self {
            FailLimitSchedule::Luby { index, multiplier } => {
                *index += 1;
                luby(*index) * *multiplier
            }
            FailLimitSchedule::Poly { .. } => self.poly_limit(improved),
        }
    }

    /// Poly rule: 32 on the first call and after an improvement, otherwise the
    /// previous limit plus 32.
    pub fn poly_limit(&mut self, improved: bool) -> u64 {
        match self {
            FailLimitSchedule::Poly { current, started } => {
                if !*started || improved {
                    *current = POLY_INCREMENT;
                } else {
                    *current += POLY_INCREMENT;
                }
                *started = true;
                *current
            }
            FailLimitSchedule::Luby { .. } => panic!("poly_limit called on a Luby schedule"),
        }
    }
}
