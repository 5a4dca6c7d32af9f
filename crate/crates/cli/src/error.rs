use std::path::Path;

use pinched_sphere::Error as CoreError;
use thiserror::Error;

/// Command failure with its process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invariant failure: {0}")]
    Invariant(String),
    #[error("{0}")]
    Infeasible(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("corrupt input: {0}")]
    Corrupt(String),
    #[error("certificate failure: {0}")]
    Certificate(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invariant(_) => 1,
            CliError::Infeasible(_) => 2,
            CliError::Io(_) => 3,
            CliError::Corrupt(_) => 4,
            CliError::Certificate(_) => 5,
        }
    }

    pub fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Io(format!("{}: {e}", path.display()))
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Infeasible(rep) => {
                CliError::Infeasible(format!("infeasible parameters: {}\n{rep}", rep.summary()))
            }
            CoreError::Domain(_) | CoreError::Precondition(_) => {
                CliError::Infeasible(e.to_string())
            }
            CoreError::Truncation { .. } => CliError::Certificate(e.to_string()),
            other => CliError::Invariant(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
