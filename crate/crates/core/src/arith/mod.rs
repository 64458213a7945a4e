//! Exact arithmetic: integers, rationals, integer polynomials, the cyclotomic
//! ground field and linear algebra over it.

mod cyclo;
mod linsys;
mod matrix;
mod poly;
mod rational;

pub use cyclo::{scalar_root_of_unity, CyclotomicField, CyclotomicScalar};
pub use linsys::{Echelon, SparseVec};
pub use matrix::Matrix;
pub use poly::IntPolynomial;
pub use rational::{ParseRationalError, Rational};

/// Arbitrary-precision signed integer.
pub type Integer = num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("divisor is not monic")]
    NonMonicDivisor,
    #[error("division is not exact")]
    InexactDivision,
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("cannot parse scalar `{0}`")]
    Parse(alloc::string::String),
}
