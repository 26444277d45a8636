use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    #[error("{what} did not converge after {terms} terms (estimated error {est_error:e})")]
    Convergence {
        what: &'static str,
        terms: usize,
        est_error: f64,
    },

    #[error("consistency check failed in {what}: {detail}")]
    Consistency { what: &'static str, detail: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("truncation unreliable: guard-band mass {guard_mass:e} exceeds {limit:e}")]
    Truncation { guard_mass: f64, limit: f64 },

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            func,
            detail: detail.into(),
        }
    }

    pub(crate) fn invalid(detail: impl Into<String>) -> Self {
        Error::Invalid(detail.into())
    }

    /// True for errors that stem from a numerical process failing to settle
    /// rather than from bad arguments.
    pub fn is_convergence(&self) -> bool {
        matches!(
            self,
            Error::Convergence { .. } | Error::Consistency { .. } | Error::Truncation { .. }
        )
    }
}
