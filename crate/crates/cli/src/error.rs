use std::io;
use std::path::PathBuf;

use sobspec_core::Error as CoreError;
use thiserror::Error;

/// Exit status: 0 success, 1 a reproduction check failed, 2 usage or
/// parse problems, 3 numeric or definiteness failures.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Input(CoreError),

    #[error("{0}")]
    Numeric(CoreError),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },

    #[error("{path}: {message}")]
    File { path: PathBuf, message: String },

    #[error("{0} reproduction check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::ChecksFailed(_) => 1,
            CliError::Usage(_)
            | CliError::Input(_)
            | CliError::Io { .. }
            | CliError::File { .. } => 2,
            CliError::Numeric(_) => 3,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Parse { .. }
            | CoreError::InvalidInput(_)
            | CoreError::SizeMismatch(_)
            | CoreError::UnsupportedMeasure { .. } => CliError::Input(e),
            CoreError::NotPositiveDefinite(_)
            | CoreError::NotHermitian(..)
            | CoreError::NoConvergence(_)
            | CoreError::InvalidDegree
            | CoreError::DenominatorVanishes(_) => CliError::Numeric(e),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
