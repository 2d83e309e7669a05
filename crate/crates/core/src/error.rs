use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {deviation:e} > tolerance {tol:e})")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e} < -{tol:e})")]
    NotPsd { eigenvalue: f64, tol: f64 },

    #[error("eigensolver did not converge: {0}")]
    ConvergenceFailure(String),

    #[error("dimension mismatch: {0}")]
    WrongDimension(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("state is not normalized (norm^2 = {0})")]
    NotNormalized(f64),

    #[error("theta = {0} is outside [0, pi]")]
    ThetaOutOfRange(f64),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("optimizer failed: {0}")]
    OptimizerFailure(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("unsupported measure/state combination: {0}")]
    Unsupported(String),

    #[error("parameter outside the valid domain: {0}")]
    DomainError(String),

    #[error("no branch condition holds: {0}")]
    NoBranch(String),

    #[error("branch pattern not covered by the chained bound: {0}")]
    PatternUnsupported(String),

    #[error("zero measure with negative exponent: {0}")]
    ZeroMeasure(String),

    #[error("assertion failed: {0}")]
    AssertionFailure(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
