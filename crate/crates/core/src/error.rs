use thiserror::Error;

pub type Result<T, E = GsdError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GsdError {
    /// Array length or qubit count does not match what the operation needs.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("qubit index {index} out of range for a {n}-qubit state")]
    Index { index: usize, n: usize },

    #[error("amplitude vector has zero norm")]
    ZeroNorm,

    #[error("amplitude vector contains a non-finite value")]
    NonFinite,

    /// No restart reached the residual tolerance.
    #[error("no restart converged after {restarts} restarts (best residual {best_residual:e})")]
    SolverDiverged { restarts: usize, best_residual: f64 },

    #[error("unsupported qubit count {n}: {requirement}")]
    UnsupportedArity { n: usize, requirement: &'static str },

    #[error("not applicable: {0}")]
    NotApplicable(&'static str),

    #[error("oracle limited to {max} qubits, got {n}")]
    CostGuard { n: usize, max: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
