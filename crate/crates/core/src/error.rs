use thiserror::Error;

use crate::instance::Time;

/// Problems found while building or parsing an [`Instance`](crate::Instance).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("instance must have at least one job and one machine")]
    EmptyDimension,
    #[error("not an integer: `{0}`")]
    NotAnInteger(String),
    #[error("{context}: expected {expected} tokens, found {found}")]
    TokenCount {
        context: String,
        expected: usize,
        found: usize,
    },
    #[error("matrix dimension mismatch: expected {expected} values, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("job {job} visits machine {machine} more than once")]
    DuplicateMachine { job: usize, machine: usize },
    #[error("job {job}, position {position}: machine index {machine} out of range")]
    MachineOutOfRange { job: usize, position: usize, machine: i64 },
    #[error("job {job}, position {position}: duration {duration} is not positive")]
    InvalidDuration { job: usize, position: usize, duration: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("work-flow instances need an even machine count, got {0}")]
    OddMachineCount(usize),
    #[error("invalid duration bounds [{lo}, {hi}]")]
    InvalidDurationBounds { lo: Time, hi: Time },
    #[error("instance must have at least one job and one machine")]
    EmptyDimension,
}

/// The oriented disjunctive graph contains a directed cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("orientation graph contains a cycle")]
pub struct CyclicError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrientationError {
    #[error("expected {expected} orientations, got {found}")]
    WrongLength { expected: usize, found: usize },
    #[error(transparent)]
    Cyclic(#[from] CyclicError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("enumeration refused: {pairs} disjunctive pairs exceeds the limit of {limit}")]
pub struct EnumerationTooLarge {
    pub pairs: usize,
    pub limit: usize,
}

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("bounds file: {0}")]
    Csv(#[from] csv::Error),
    #[error("bounds file: {0}")]
    Io(#[from] std::io::Error),
    #[error("{name}: lower bound {lb} exceeds upper bound {ub}")]
    Inverted { name: String, lb: Time, ub: Time },
    #[error("{name}: flagged optimal but lb {lb} != ub {ub}")]
    OptimalMismatch { name: String, lb: Time, ub: Time },
    #[error("{name}: optimal flag must be 0 or 1, got {value}")]
    BadFlag { name: String, value: u8 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("solutions belong to different instances ({0} vs {1} pairs)")]
    MismatchedInstances(usize, usize),
    #[error("no best-known cost for instance `{0}`")]
    MissingBestKnown(String),
    #[error("best-known cost for `{0}` must be positive")]
    NonPositiveBestKnown(String),
    #[error("no best-known bounds for: {}", .0.join(", "))]
    MissingBounds(Vec<String>),
    #[error("no records to aggregate")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("elite size must be positive")]
    EliteSize,
    #[error("p must lie in [0, 1], got {0}")]
    Probability(f64),
    #[error("critical fraction must lie in (0, 1], got {0}")]
    CriticalFraction(f64),
    #[error("initial sample count must be positive")]
    InitSamples,
    #[error("time limit must be finite and non-negative, got {0}")]
    TimeLimit(f64),
    #[error("luby multiplier must be positive")]
    LubyMultiplier,
}
