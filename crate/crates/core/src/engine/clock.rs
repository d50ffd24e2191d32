use std::time::Instant;

use serde::{Deserialize, Serialize};

/// Work units that make up one second on the work clock.
///
/// A unit is one elementary propagation or heuristic step. The rate was
/// measured on a single x86-64 core over 6×6, 10×10 and 20×15 instances, where
/// one work second came to between 0.5 and 1.5 wall seconds.
pub const WORK_UNITS_PER_SECOND: u64 = 150_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ClockKind {
    /// Deterministic clock driven by counted search work.
    #[default]
    Work,
    /// Real elapsed time.
    Wall,
}

/// Elapsed-time source for one run.
#[derive(Debug, Clone)]
pub struct Clock {
    kind: ClockKind,
    started: Instant,
    work: u64,
    units_per_second: u64,
}

impl Clock {
    pub fn new(kind: ClockKind) -> Clock {
        Clock {
            kind,
            started: Instant::now(),
            work: 0,
            units_per_second: WORK_UNITS_PER_SECOND,
        }
    }

    pub fn work() -> Clock {
        Clock::new(ClockKind::Work)
    }

    pub fn wall() -> Clock {
        Clock::new(ClockKind::Wall)
    }

    /// Work clock with a custom rate, mostly for tests.
    pub fn with_rate(units_per_second: u64) -> Clock {
        Clock {
            units_per_second: units_per_second.max(1),
            ..Clock::work()
        }
    }

    pub fn kind(&self) -> ClockKind {
        self.kind
    }

    #[inline]
    pub fn charge(&mut self, units: u64) {
        self.work += units;
    }

    /// Total work charged so far, whatever the clock kind.
    pub fn work_done(&self) -> u64 {
        self.work
    }

    /// Seconds since the clock started.
    #[inline]
    pub fn elapsed(&self) -> f64 {
        match self.kind {
            ClockKind::Work => self.work as f64 / self.units_per_second as f64,
            ClockKind::Wall => self.started.elapsed().as_secs_f64(),
        }
    }

    #[inline]
    pub fn reached(&self, deadline: Option<f64>) -> bool {
        deadline.is_some_and(|d| self.elapsed() >= d)
    }
}
