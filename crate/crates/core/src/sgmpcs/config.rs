use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::engine::{ClockKind, LimitSequence, Traversal};
use crate::error::ConfigError;
use crate::instance::Time;

/// Elite replacement rule, named after the diversity it induces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Diversity {
    /// Improvements always replace the worst member.
    Low,
    /// Empty starts replace the worst member, guided starts their reference.
    #[serde(alias = "med")]
    Medium,
    /// Empty starts replace the closest member, guided starts their reference.
    High,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundPolicy {
    /// Every search runs under `c* - 1`.
    Global,
    /// Empty starts run under `worst(e) - 1`, guided starts under `cost(r) - 1`.
    Local,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Sgmpcs,
    Chron,
    Lds,
    Restart,
}

impl Algorithm {
    pub fn id(self) -> &'static str {
        match self {
            Algorithm::Sgmpcs => "sgmpcs",
            Algorithm::Chron => "chron",
            Algorithm::Lds => "lds",
            Algorithm::Restart => "restart",
        }
    }
}

macro_rules! parse_enum {
    ($ty:ty, $what:literal, { $($($name:literal)|+ => $value:expr),+ $(,)? }) => {
        impl FromStr for $ty {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s.to_ascii_lowercase().as_str() {
                    $($($name)|+ => Ok($value),)+
                    other => Err(format!("unknown {} `{}`", $what, other)),
                }
            }
        }
    };
}

parse_enum!(Diversity, "diversity level", {
    "low" => Diversity::Low,
    "med" | "medium" => Diversity::Medium,
    "high" => Diversity::High,
});
parse_enum!(BoundPolicy, "bound policy", {
    "global" => BoundPolicy::Global,
    "local" => BoundPolicy::Local,
});
parse_enum!(Algorithm, "algorithm", {
    "sgmpcs" => Algorithm::Sgmpcs,
    "chron" => Algorithm::Chron,
    "lds" => Algorithm::Lds,
    "restart" => Algorithm::Restart,
});
parse_enum!(LimitSequence, "fail-limit sequence", {
    "luby" => LimitSequence::Luby,
    "poly" => LimitSequence::Poly,
});
parse_enum!(Traversal, "backtracking method", {
    "chron" => Traversal::Chron,
    "lds" => Traversal::Lds,
});
parse_enum!(ClockKind, "clock", {
    "work" => ClockKind::Work,
    "wall" => ClockKind::Wall,
});

/// Parameters of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    pub elite_size: usize,
    /// Probability of starting a search from an empty solution.
    pub p: f64,
    pub sequence: LimitSequence,
    pub traversal: Traversal,
    pub diversity: Diversity,
    pub bound_policy: BoundPolicy,
    /// Heuristic descents used to seed the elite set.
    pub init_samples: usize,
    /// Seconds on the configured clock.
    pub time_limit: f64,
    /// Optional cap on the total number of fails in the main loop.
    pub max_fails: Option<u64>,
    pub seed: u64,
    pub critical_fraction: f64,
    pub luby_multiplier: u64,
    pub clock: ClockKind,
    /// Seconds between trajectory snapshots.
    pub cadence: f64,
    /// Known optimum, used only to set the found-optimal flag.
    pub known_optimum: Option<Time>,
    /// Keep a per-search trace in the run record.
    pub trace: bool,
}

impl Default for EngineConfig {
    /// The best-performing setting: `|e| = 4`, `p = 0.25`, Luby, chronological,
    /// low diversity, global bound.
    fn default() -> Self {
        EngineConfig {
            elite_size: 4,
            p: 0.25,
            sequence: LimitSequence::Luby,
            traversal: Traversal::Chron,
            diversity: Diversity::Low,
            bound_policy: BoundPolicy::Global,
            init_samples: 50,
            time_limit: 60.0,
            max_fails: None,
            seed: 0,
            critical_fraction: 0.10,
            luby_multiplier: 1,
            clock: ClockKind::Work,
            cadence: 1.0,
            known_optimum: None,
            trace: false,
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.elite_size == 0 {
            return Err(ConfigError::EliteSize);
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(ConfigError::Probability(self.p));
        }
        if !(self.critical_fraction > 0.0 && self.critical_fraction <= 1.0) {
            return Err(ConfigError::CriticalFraction(self.critical_fraction));
        }
        if self.init_samples == 0 {
            return Err(ConfigError::InitSamples);
        }
        if !self.time_limit.is_finite() || self.time_limit < 0.0 {
            return Err(ConfigError::TimeLimit(self.time_limit));
        }
        if self.luby_multiplier == 0 {
            return Err(ConfigError::LubyMultiplier);
        }
        Ok(())
    }
}
