//! Command-line front end: condition-number densities on a grid, Monte Carlo
//! samples, verification reports, the large-β limit and β sweeps.

mod args;
mod commands;
mod format;
pub mod parallel;

use std::process::ExitCode;

pub use args::{Cli, Command, GridArgs, ModelArgs, SamplerArg};
pub use commands::run;
pub use format::{format_significant, log_grid, ReportJson};

/// Successful completion of a subcommand. Errors map to exit code 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed,
}

impl From<Outcome> for ExitCode {
    fn from(o: Outcome) -> Self {
        match o {
            Outcome::Success => ExitCode::SUCCESS,
            Outcome::VerificationFailed => ExitCode::from(1),
        }
    }
}

/// Anything that stops a subcommand before it produces its output.
#[derive(Debug)]
pub enum CliError {
    Model(wishcond_core::Error),
    Usage(String),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Model(e) => write!(f, "{e}"),
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            CliError::Model(e) => Some(e),
            CliError::Io(e) => Some(e),
            CliError::Usage(_) => None,
        }
    }
}

impl From<wishcond_core::Error> for CliError {
    fn from(e: wishcond_core::Error) -> Self {
        CliError::Model(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}
