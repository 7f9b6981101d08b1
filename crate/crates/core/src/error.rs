//! Error type shared by the estimator modules.

use thiserror::Error;

/// Failure of a resource-estimation routine.
///
/// Every variant names the precondition that was violated so the message can
/// be forwarded verbatim to a command-line user.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EstimateError {
    /// A numeric argument was outside its admissible range.
    #[error("invalid {name}: {value} ({requirement})")]
    InvalidArgument {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },
    /// A count-valued argument was outside its admissible range.
    #[error("invalid {name}: {value} ({requirement})")]
    InvalidCount {
        name: &'static str,
        value: u64,
        requirement: &'static str,
    },
    /// A Hamiltonian or lattice parameter failed validation.
    #[error("invalid parameter {name}: {value} ({requirement})")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },
    /// The operator to be block-encoded has zero one-norm.
    #[error("block encoding has zero one-norm; nothing to encode")]
    ZeroNorm,
    /// A parameter file could not be parsed.
    #[error("parameter file line {line}: {message}")]
    Config { line: usize, message: String },
}

/// Convenience alias for results produced by this crate.
pub type Result<T> = std::result::Result<T, EstimateError>;

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(EstimateError::InvalidArgument {
            name,
            value,
            requirement: "must be finite and strictly positive",
        })
    }
}
