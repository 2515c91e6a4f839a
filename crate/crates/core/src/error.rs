use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("eigensolver did not converge: {0}")]
    ConvergenceFailure(String),

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("invalid design parameters: {0}")]
    InvalidParams(String),

    #[error("duplicate eigenvalue: {0}")]
    DuplicateEigenvalue(String),

    #[error("spectrum is not antisymmetric: {0}")]
    NotAntisymmetric(String),

    #[error("reconstruction failed: {0}")]
    ReconstructionFailure(String),

    #[error("couplings are not mirror-symmetric: {0}")]
    AsymmetricInput(String),

    #[error("invalid two-qubit state: {0}")]
    InvalidState(String),
}

impl Error {
    /// Failures of the numerics themselves, as opposed to rejected inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::ConvergenceFailure(_) | Error::ReconstructionFailure(_)
        )
    }
}
