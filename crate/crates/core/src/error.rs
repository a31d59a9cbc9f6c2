use thiserror::Error;

/// Errors produced by the correlation engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid vector: {0}")]
    InvalidVector(String),
    #[error("invalid setting pair: |main . perp| = {0:e} exceeds 1e-9")]
    NotOrthogonal(f64),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("correlation {0} lies outside [-1, 1]")]
    CorrelationOutOfRange(f64),
    #[error("setting ({0}, {1}, {2}) is not present in the response table")]
    UnknownSetting(f64, f64, f64),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("predicate is not monotone on the probe grid: {0}")]
    NotMonotone(String),
}

pub type Result<T> = std::result::Result<T, Error>;
