//! Exact arithmetic substrate: rationals, prime and cyclotomic fields,
//! cyclotomic polynomials, and inertia of symmetric rational matrices.

mod field;
mod matrix;
mod poly;
mod rational;

pub use field::{is_prime, primitive_root_of_unity, Field, FieldDescriptor, FieldElement};
pub use matrix::{rank, signature_of_symmetric_matrix, Inertia, SymmetricMatrix};
pub use poly::{cyclotomic_polynomial, IntPoly};
pub use rational::{
    abs_le, format_rational, int, parse_rational, pow_int, rat, serde_bigint, serde_rational,
    serde_rational_opt, serde_rational_vec, Rational,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("field {field} cannot host a primitive {k}-th root of unity: {reason}")]
    UnsupportedField { field: FieldDescriptor, k: u32, reason: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cyclotomic conductor must be at least 1, got {0}")]
    InvalidConductor(u32),
    #[error("{0} has no image in F_{1}")]
    NotInvertible(String, u64),
    #[error("field {0} has no {1} representation")]
    WrongRepresentation(FieldDescriptor, &'static str),
    #[error("matrix must have positive order")]
    EmptyMatrix,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
