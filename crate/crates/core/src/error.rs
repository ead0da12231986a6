use thiserror::Error;

/// Errors raised by the library.
///
/// Each variant belongs to one of three families that the command line maps to
/// exit codes: invalid input or witness, exhausted search budget, or a violated
/// hypothesis of a construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("homomorphism is not well defined: {0}")]
    NotWellDefined(String),
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("move {index} failed: {reason}")]
    InvalidMove { index: usize, reason: String },
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("the form carries no map to Z/2")]
    VMissing,
    #[error("search budget exhausted after {nodes} nodes")]
    NodeLimit { nodes: u64 },
}

impl Error {
    pub(crate) fn hyp(name: impl Into<String>) -> Self {
        Error::Hypothesis(name.into())
    }

    /// Process exit code associated with this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NodeLimit { .. } => 3,
            Error::Hypothesis(_) | Error::VMissing => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
