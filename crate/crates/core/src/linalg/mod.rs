//! Exact linear algebra over the rationals and over prime fields.

mod certified;
mod field;
mod local;
mod rref;
mod sparse;
mod subspace;

use num_bigint::BigInt;
use thiserror::Error;

pub use certified::{
    certified_kernel, certified_kernel_basis, CertifiedKernel, CertifyOptions, ColumnSystem, LinearSystem,
};
pub use field::{is_prime, random_prime, PrimeField};
pub use local::{column_kernel, solve, vectors_rank, vectors_rank_modp};
pub use rref::{kernel_basis, rank, rank_modp, rref, rref_modp, Rref};
pub use sparse::{SparseMatrix, SparseVec};
pub use subspace::{intersect_subspaces, span_basis, Subspace};

/// Exact rational scalar, always stored in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("prime {p} divides a denominator; draw another prime")]
    DenominatorDivisibleByP { p: u64 },
    #[error("modular kernel did not certify after {primes} primes")]
    CertificationFailed { primes: usize },
}
