//! Shared error type for every module in the crate.

use thiserror::Error;

/// Crate-wide error enum. Variants map onto the failure classes the
/// numerical kernels and the harness can actually hit.
#[derive(Debug, Error)]
pub enum Error {
    /// Operand shapes are inconsistent.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A Cholesky pivot came out non-positive.
    #[error("matrix not positive definite: pivot {pivot:e} at index {index}")]
    NotPositiveDefinite { index: usize, pivot: f64 },

    /// An iterative kernel hit its iteration cap before the tolerance.
    #[error("no convergence after {0} iterations")]
    NoConvergence(usize),

    /// A NaN or infinity appeared where a finite value is required.
    #[error("non-finite value in {0}")]
    NonFiniteValue(&'static str),

    /// Confidence parameter outside (0, 1).
    #[error("delta must lie in (0, 1), got {0}")]
    InvalidDelta(f64),

    /// The operation is defined only for a restricted network family.
    #[error("unsupported architecture: {0}")]
    UnsupportedArchitecture(String),

    /// A linear system that should be regular is numerically singular.
    #[error("singular system: {0}")]
    SingularSystem(String),

    /// Experiment configuration failed validation.
    #[error("invalid config: {0}")]
    InvalidConfig(String),

    /// File output failed.
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for the variants the CLI reports as a numerical failure
    /// (exit code 2) rather than bad configuration or I/O.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch(_)
                | Error::NotPositiveDefinite { .. }
                | Error::NoConvergence(_)
                | Error::NonFiniteValue(_)
                | Error::InvalidDelta(_)
                | Error::UnsupportedArchitecture(_)
                | Error::SingularSystem(_)
        )
    }
}
