use thiserror::Error;

use crate::linalg::{LinalgError, Scalar};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("not a group: {axiom} fails ({witness})")]
    NotAGroup { axiom: &'static str, witness: String },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("map does not descend to the balanced tensor product: relation {} is not killed", format_vector(.witness))]
    Descent { witness: Vec<Scalar> },
    #[error("grading violation: {0}")]
    Grading(String),
    #[error("dual basis identity fails at basis vector {index} of P")]
    DualBasis { index: usize },
    #[error("{context}: expected dimension {expected}, found {found}")]
    Dimension {
        context: String,
        expected: usize,
        found: usize,
    },
    #[error("incompatible operands: {0}")]
    Incompatible(String),
    #[error("no instance")]
    NoInstance,
    #[error("{0}")]
    Usage(String),
    #[error("line {line}: {message}")]
    Spec { line: usize, message: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub(crate) fn format_vector(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(" "))
}
