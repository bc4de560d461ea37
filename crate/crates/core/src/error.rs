use thiserror::Error;

use crate::numkernel::Field;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: Field, found: Field },

    #[error("not a contraction: operator norm {norm:.12} exceeds 1")]
    NotContraction { norm: f64 },

    #[error("not an isometry: residual {residual:.3e}")]
    NotIsometry { residual: f64 },

    #[error("not injective: rank {rank} < domain dimension {dim}")]
    NotInjective { rank: usize, dim: usize },

    #[error("not monic into the unit: {0}")]
    NotMonic(String),

    #[error("zero denominator: modulus {modulus:.3e}")]
    ZeroDenominator { modulus: f64 },

    #[error("out of domain: {0}")]
    OutOfDomain(String),

    /// A universal-property witness failed to verify.
    #[error("verification failed: {what} (residual {residual:.3e})")]
    Verification { what: String, residual: f64 },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
