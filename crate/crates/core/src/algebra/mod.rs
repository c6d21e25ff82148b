//! Exact scalars, forms in four variables and exact linear algebra.

mod linalg;
mod parse;
mod poly;
mod scalar;

pub use linalg::{ExactMatrix, Field, PrimeField, Rationals};
pub use parse::poly_parse;
pub use poly::{binomial, monomial_basis, ModPolynomial, Monomial, Polynomial, NVARS};
pub use scalar::{format_rational, parse_rational, rational_mod_p, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("expected a form of degree {expected}, got {found}")]
    Inhomogeneous { expected: u32, found: String },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("bad prime {p}: {reason}")]
    BadPrime { p: u64, reason: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed matrix: {0}")]
    Matrix(String),
}
