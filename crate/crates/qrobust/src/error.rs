//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum QrError {
    #[error("matrix is not Hermitian: max asymmetry {max_asym:.3e} exceeds {tol:.3e}")]
    NotHermitian { max_asym: f64, tol: f64 },

    #[error("invalid qubit subset: {0}")]
    BadSubset(String),

    #[error("parameter {name} = {value} outside [{lo}, {hi}]")]
    BadParameter {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("qubit index {index} out of range 1..={n_qubits}")]
    BadQubitIndex { index: usize, n_qubits: usize },

    #[error("operation not defined for channel kind {0}")]
    WrongChannelKind(String),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("state invariant violated: {0}")]
    InvalidState(String),

    #[error("entanglement never vanishes: E(1) = {0:.3e}")]
    NoDeath(f64),

    #[error("invalid configuration: {0}")]
    ConfigError(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, QrError>;
