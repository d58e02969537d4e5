use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested potential variant is not supported by this operation.
    #[error("unsupported potential: {0}")]
    UnsupportedSpec(String),

    /// The potential admits no bound state for the requested channel.
    #[error("no bound state: {0}")]
    NoBoundState(String),

    /// An iterative procedure exhausted its budget before reaching tolerance.
    #[error("failed to converge: {0}")]
    Convergence(String),

    /// Malformed user input (files, brackets, empty observation lists, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Every trial point of a fit evaluated to an invalid objective.
    #[error("infeasible start: {0}")]
    InfeasibleStart(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
