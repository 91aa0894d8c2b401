use std::path::PathBuf;

use meetjoin_core::Error as CoreError;
use thiserror::Error;

/// Exit status for I/O, parse and usage problems.
pub const EXIT_INPUT: u8 = 1;
/// Exit status for failed preconditions or hypotheses.
pub const EXIT_PRECONDITION: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{}:{line}: {message}", path.display())]
    Parse { path: PathBuf, line: usize, message: String },

    #[error("{}: {message}", path.display())]
    Format { path: PathBuf, message: String },

    #[error("{}:{line}: duplicate value for `{label}` (first given on line {first})", path.display())]
    Duplicate { path: PathBuf, line: usize, first: usize, label: String },

    #[error("no function value for {}", labels.join(", "))]
    MissingValue { labels: Vec<String> },

    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Core(#[from] CoreError),

    #[error("hypotheses of the eigenvalue bounds failed: {0}")]
    Unverified(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                CoreError::Precondition(_)
                | CoreError::Hypothesis(_)
                | CoreError::Monotonicity { .. }
                | CoreError::NotClosed { .. }
                | CoreError::NotSuperset { .. }
                | CoreError::NoMeet { .. }
                | CoreError::NoJoin { .. }
                | CoreError::Convergence { .. }
                | CoreError::Support { .. } => EXIT_PRECONDITION,
                _ => EXIT_INPUT,
            },
            CliError::Unverified(_) => EXIT_PRECONDITION,
            _ => EXIT_INPUT,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
