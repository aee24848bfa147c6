use thiserror::Error;

/// Errors raised by scalar and matrix arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("domain mismatch: {left} vs {right}")]
    DomainMismatch { left: String, right: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("no pivot: the column is zero")]
    NoPivot,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),
    #[error("parse error: {0}")]
    Parse(String),
}
