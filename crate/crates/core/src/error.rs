use thiserror::Error;

/// Crate-wide error type. Variants are grouped by the kind of contract they
/// report: bad input data, domain preconditions, or exhausted search budgets.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("point {point} out of range for grid side {side}")]
    OutOfRange { point: String, side: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("function is constant")]
    ConstantFunction,

    #[error("function is not a member of the requested class")]
    NotInClass,

    #[error("unsupported class parameters: {0}")]
    UnsupportedClass(String),

    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search budget exceeded after {visited} node visits")]
    BudgetExceeded { visited: u64 },
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
