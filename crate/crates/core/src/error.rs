use thiserror::Error;

/// Errors raised by rule construction, series analysis and the experiment drivers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("Newton iteration for node {node} of the {n}-point Gauss rule did not converge in {iterations} steps")]
    NewtonConvergence {
        n: usize,
        node: usize,
        iterations: usize,
    },

    #[error("Remez exchange did not converge after {iterations} iterations (gap {gap:e})")]
    RemezConvergence { iterations: usize, gap: f64 },

    #[error("singular reference system in Remez exchange")]
    SingularReference,

    #[error("not enough usable points: need {needed}, have {available}")]
    InsufficientData { needed: usize, available: usize },

    #[error("mismatched sweeps: {0}")]
    Mismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid function spec `{spec}`: {reason}")]
    FunctionSpec { spec: String, reason: String },

    #[error("function evaluation failed at x = {x}: {reason}")]
    Evaluation { x: f64, reason: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
