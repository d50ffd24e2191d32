//! Command-line front end: `solve`, `sweep`, `generate` and `report`.

mod args;
mod generate;
mod io;
mod report;
mod solve;
mod sweep;

use std::ffi::OsString;
use std::fmt;

use clap::Parser;

pub use args::{Cli, Command, GenerateArgs, ReportArgs, SolveArgs, SweepArgs};
pub use sweep::SweepSpec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_MISSING_BOUNDS: i32 = 4;

/// An error paired with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn usage(error: impl Into<anyhow::Error>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            error: error.into(),
        }
    }

    pub fn input(error: impl Into<anyhow::Error>) -> Failure {
        Failure {
            code: EXIT_INPUT,
            error: error.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.error)
    }
}

pub type CliResult<T = ()> = Result<T, Failure>;

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Solve(a) => solve::run(&a),
        Command::Sweep(a) => sweep::run(&a),
        Command::Generate(a) => generate::run(&a),
        Command::Report(a) => report::run(&a),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            eprintln!("error: {failure}");
            failure.code
        }
    }
}
