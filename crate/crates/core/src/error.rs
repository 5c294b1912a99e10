use thiserror::Error;

use crate::hooks::Node;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid node ({}, {}) for composition {composition}", node.row, node.col)]
    InvalidNode { node: Node, composition: String },

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("factor {m}κ+{n} rejected: {reason}")]
    BadFactor { m: u64, n: u64, reason: &'static str },

    #[error("infeasible bounds: {0}")]
    InfeasibleBounds(String),

    #[error("problem too large: {0}")]
    TooLarge(String),

    #[error("dimension mismatch: expected {expected} variables, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("pair is not a certified critical pair")]
    Uncertified,

    #[error("denominator has a factor without rational roots: {0}")]
    NonLinearResidue(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
