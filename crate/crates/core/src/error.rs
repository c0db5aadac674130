use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Pivot `index` (zero-based) of an LDL* or Cholesky sweep was not positive.
    #[error("matrix is not positive definite (pivot {0} not positive)")]
    NotPositiveDefinite(usize),

    #[error("matrix is not Hermitian at entry ({0}, {1})")]
    NotHermitian(usize, usize),

    #[error("eigensolver did not converge within {0} iterations")]
    NoConvergence(usize),

    #[error("polynomial must have degree at least 1")]
    InvalidDegree,

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("unsupported measure for {op}: {spec}")]
    UnsupportedMeasure { op: &'static str, spec: String },

    #[error("denominator weight vanishes near theta = {0}")]
    DenominatorVanishes(f64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at `{token}`: {message}")]
    Parse { token: String, message: String },
}

impl Error {
    pub fn parse(token: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
