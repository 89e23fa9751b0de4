use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),
    #[error("Jacobi eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("trace {0} differs from 1")]
    BadTrace(f64),
    #[error("matrix is not positive semidefinite (smallest eigenvalue {0:.3e})")]
    NotPositive(f64),
    #[error("state vector norm {0} differs from 1")]
    NotNormalized(f64),
    #[error("bad subsystem specification: {0}")]
    BadSubsystemSpec(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("optimizer failure: {0}")]
    OptimizerFailure(String),
    #[error("input must be strictly positive: {0}")]
    NonPositiveInput(&'static str),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("numeric failure for {pair} at r = {r}: {source}")]
    AtPoint {
        pair: String,
        r: f64,
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
