use thiserror::Error;

/// Errors produced by the approximation, inversion, oracle and sweep routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The operation was called with an incompatible method or mismatched inputs.
    #[error("usage error: {0}")]
    Usage(String),
    /// A grid, bound or oracle configuration violates its invariants.
    #[error("configuration error: {0}")]
    Config(String),
    /// The inverse solver found no admissible root for an otherwise valid input.
    #[error("internal range error: {0}")]
    InternalRange(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn require_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {value}")))
    }
}
