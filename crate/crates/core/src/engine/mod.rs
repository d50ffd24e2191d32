//! Resource-limited constructive tree search over disjunctive pair orders.

mod clock;
mod limits;
mod search;
mod state;

pub use clock::{Clock, ClockKind, WORK_UNITS_PER_SECOND};
pub use limits::{luby, FailLimitSchedule, LimitSequence, POLY_INCREMENT};
pub use search::{search, SearchMonitor, SearchOutcome, SearchParams, Traversal};
pub use state::{Fail, Mark, PairStatus, SearchState, TimeWindow};
