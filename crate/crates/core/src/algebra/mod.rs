//! Exact scalar fields and sparse multivariate polynomials.

mod parse;
mod poly;
mod scalar;

use thiserror::Error;

pub use parse::{parse_poly, parse_scalar, MAX_EXPONENT};
pub use poly::{Degree, Monomial, Polynomial};
pub use scalar::{Field, Scalar, PRIME_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable '{name}' at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("'i' at position {position} is only available over Qi")]
    ImaginaryOutsideGaussian { position: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },
    #[error("variable count mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime below 2^32")]
    InvalidModulus(u64),
}
