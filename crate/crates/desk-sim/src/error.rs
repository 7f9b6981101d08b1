//! Error type for the desk-scale simulators.

use pionless_core::EstimateError;
use thiserror::Error;

/// Failure of a desk-scale construction or simulation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    /// The requested object would exceed the dense-work limit.
    #[error("{what} has size {size}, above the desk-scale limit {limit}")]
    TooLarge {
        what: &'static str,
        size: u64,
        limit: u64,
    },
    /// The instance is outside the family a verifier supports.
    #[error("unsupported instance: {0}")]
    Unsupported(String),
    /// A circuit left an ancilla in a non-zero state at release.
    #[error("ancilla qubit {qubit} not returned to |0> (weight {weight:.3e})")]
    DirtyAncilla { qubit: usize, weight: f64 },
    /// A gate was applied that the chosen simulator cannot represent.
    #[error("gate {0} is not a classical permutation with phase")]
    NotClassical(&'static str),
    /// A gate referenced a qubit outside the sequence.
    #[error("qubit {qubit} out of range for {qubits} qubits")]
    QubitOutOfRange { qubit: usize, qubits: usize },
    /// Invalid input to an estimator function.
    #[error(transparent)]
    Estimate(#[from] EstimateError),
}

/// Convenience alias for results produced by this crate.
pub type Result<T> = std::result::Result<T, SimError>;

pub(crate) fn check_limit(what: &'static str, size: u64, limit: u64) -> Result<()> {
    if size > limit {
        Err(SimError::TooLarge { what, size, limit })
    } else {
        Ok(())
    }
}
