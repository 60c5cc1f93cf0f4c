use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable-set mismatch")]
    VariableSetMismatch,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("undeclared identifier `{name}` at position {pos}")]
    Undeclared { name: String, pos: usize },

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("need |A| >= n (|A| = {d}, n = {n})")]
    TooFewNodes { d: usize, n: usize },

    #[error("invalid node multiset: {0}")]
    InvalidNodes(String),

    #[error("input must be symmetric")]
    NotSymmetric,

    #[error("Lagrange path requires distinct nodes")]
    RepeatedNodes,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inexact division")]
    InexactDivision,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A mathematical invariant that must hold for valid inputs did not hold.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
