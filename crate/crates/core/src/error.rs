use thiserror::Error;

use crate::matcat::TensorObject;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0} is not invertible")]
pub struct NotInvertible(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid literal `{text}`: {reason}")]
pub struct LiteralError {
    pub text: String,
    pub reason: String,
}

impl LiteralError {
    pub fn new(text: &str, reason: impl Into<String>) -> Self {
        LiteralError { text: text.to_string(), reason: reason.into() }
    }
}

/// Errors raised by the matrix category and its compact structure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("object mismatch: expected {expected}, found {found}")]
    ObjectMismatch { expected: TensorObject, found: TensorObject },
    #[error("expected a scalar I -> I, found {dom} -> {cod}")]
    NotAScalar { dom: TensorObject, cod: TensorObject },
    #[error("matrix has {rows}x{cols} entries but its type needs {want_rows}x{want_cols}")]
    Shape { rows: usize, cols: usize, want_rows: usize, want_cols: usize },
    #[error("trace split mismatch: {0}")]
    TraceSplit(String),
    #[error(transparent)]
    NotInvertible(#[from] NotInvertible),
    #[error(transparent)]
    Literal(#[from] LiteralError),
}
