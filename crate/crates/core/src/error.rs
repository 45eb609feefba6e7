use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid b-vector: {0}")]
    InvalidBVector(String),
    #[error("the b-vector (1) defines a single point; n = 1 requires b1 >= 2")]
    DegenerateBVector,
    #[error("dimension mismatch: expected length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{what} = {value} is out of range (max {max})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        max: usize,
    },
    #[error("{0} is not a vertex of the polytope")]
    NotAVertex(String),
    #[error("{0} is not a nested set of the building set")]
    NotNested(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("budget exceeded: {what} needs {required}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        required: String,
        limit: u64,
    },
    #[error("parse error: {0}")]
    Parse(String),
}
