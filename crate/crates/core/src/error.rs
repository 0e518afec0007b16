use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the algebra kernels and the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("variable mismatch: {left:?} vs {right:?} (align the operands first)")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },

    #[error("variable `{0}` has no image in the assignment")]
    MissingVariable(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a unit")]
    NotInvertible(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not symmetric: swapping `{first}` and `{second}` changes the polynomial")]
    NotSymmetric { first: String, second: String },

    #[error("rejected: {0}")]
    Rejected(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("insufficient precision: {0}")]
    Precision(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("invalid JSON: {0}")]
    Json(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit status for the CLI contract: 1 domain, 2 usage, 3 resource.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceLimit(_) => 3,
            Error::Parse { .. } | Error::InvalidArgument(_) | Error::Json(_) | Error::Io(_) => 2,
            _ => 1,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
