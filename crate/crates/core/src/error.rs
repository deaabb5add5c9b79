use thiserror::Error;

/// Errors raised by the analytic modules and the Fock-space oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter is outside its physical range, or a call was malformed.
    #[error("invalid value for `{field}`: {reason}")]
    Usage { field: &'static str, reason: String },

    /// Series arithmetic received incompatible operands.
    #[error("series mismatch: {0}")]
    SeriesMismatch(String),

    /// A documented precondition of a series routine does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Photon subtraction removes the whole state (zero normalizer).
    #[error("subtraction annihilates state (normalizer {normalizer:e})")]
    Annihilated { normalizer: f64 },

    /// A quantity that must be real (or non-negative, or self-consistent) is not.
    #[error("internal consistency failure in {what}: residue {residue:e}")]
    Consistency { what: &'static str, residue: f64 },

    /// The Fock-space truncation leaves too much probability at the edge.
    #[error("cutoff too small: tail mass {tail:e} at cutoff {cutoff}")]
    CutoffTooSmall { tail: f64, cutoff: usize },

    /// A quantity was requested outside the domain where it is defined.
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn usage(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Usage { field, reason: reason.into() }
    }
}
