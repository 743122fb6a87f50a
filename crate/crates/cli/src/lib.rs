//! Library side of the `posetkit` command: every subcommand builds a
//! serializable report so tests can drive it without spawning processes.

pub mod analyze;
pub mod campaign;
pub mod input;
pub mod represent;
pub mod search;

use std::fmt;

/// Failure of a subcommand, mapped onto the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or invalid input; exit code 2.
    Input(String),
    /// A checked property failed; exit code 1. Carries the JSON report.
    Violation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Violation(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Violation(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<posetkit::Error> for CliError {
    fn from(e: posetkit::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
