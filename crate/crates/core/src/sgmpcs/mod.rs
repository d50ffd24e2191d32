//! Elite-set initialization, the guided restart loop and the baselines.

mod baseline;
mod config;
mod elite;
mod runner;

pub use baseline::{run_baseline, BaselineKind};
pub use config::{Algorithm, BoundPolicy, Diversity, EngineConfig};
pub use elite::{init_elite, EliteSet, StartContext};
pub use runner::{run_sgmpcs, Incumbent, RunResult};
