use thiserror::Error;

use crate::canonical::JordanBlock;
use crate::reversal::DetSignPrediction;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithmeticError {
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError { position, message: message.into() }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{op} needs a square matrix, got {rows}x{cols}")]
    NotSquare { op: &'static str, rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("invalid matrix shape: {0}")]
    Shape(String),
    #[error("invalid permutation: {0}")]
    Permutation(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("a Jordan spec needs at least one block")]
    Empty,
    #[error("block {} has eigenvalue 0", index + 1)]
    /// `index` is 0-based; the message counts from 1.
    ZeroEigenvalue { index: usize },
    #[error("block {} has size 0", index + 1)]
    ZeroSize { index: usize },
    #[error("invalid partition {parts:?}: {reason}")]
    Partition { parts: Vec<usize>, reason: String },
    #[error("invalid eigenvalue pool: {0}")]
    Pool(String),
}

/// Failures of canonical-form construction. These indicate a bug, not bad input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CanonicalError {
    #[error("duality permutation does not conjugate the Jordan matrix to the Weyr matrix (first mismatch at {0:?})")]
    DualityMismatch(Option<(usize, usize)>),
    #[error("no invertible centralizer sample after {0} attempts")]
    SamplingExhausted(usize),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReversalError {
    #[error("not reversible: block {0} has no partner")]
    NotReversible(Box<JordanBlock>),
    #[error("no involutive reverser has determinant 1 (every involutive reverser has determinant {0})")]
    NotStronglyReversible(DetSignPrediction),
    #[error("parameter out of range: {0}")]
    InvalidParameter(String),
    #[error("witness failed verification:\n{}", .0.join("\n"))]
    VerificationFailed(Vec<String>),
    #[error(transparent)]
    Canonical(#[from] CanonicalError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
}
