//! Job-shop scheduling by solution-guided multi-point constructive search.

pub mod engine;
pub mod error;
pub mod heuristics;
pub mod instance;
pub mod metrics;
pub mod sgmpcs;

pub use instance::{Instance, Solution, Time};
pub use sgmpcs::{run_baseline, run_sgmpcs, BaselineKind, EngineConfig, RunResult};
