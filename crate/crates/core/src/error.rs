use thiserror::Error;

/// A division or inversion hit a non-unit.
///
/// In the prime-field backend this means the random specialization landed on
/// a zero of some denominator; callers resample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("element is not invertible")]
pub struct NonInvertible;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element is not invertible")]
    NonInvertible,
    #[error("no usable specialization after {0} resamples")]
    ResampleExhausted(usize),
    #[error("characteristic polynomial coefficient c{index} has a nonzero Y^{degree} component")]
    CoefficientNotInK { index: usize, degree: usize },
    #[error("certificate invalid: {0}")]
    CertificateInvalid(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("element is not in the subfield K[y]")]
    NotInSubfield,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("configuration error: {0}")]
    Config(String),
}

impl From<NonInvertible> for Error {
    fn from(_: NonInvertible) -> Self {
        Error::NonInvertible
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
