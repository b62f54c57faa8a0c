//! Graded pieces of symmetric and exterior algebras with explicit monomial bases.
//!
//! A basis label of a factor is a sorted word of letter indices: weakly increasing for a
//! symmetric power (the monomial `u^α` with `α_i` copies of `i`) and strictly increasing
//! for an exterior power (the wedge `u_α`). Symmetric words are ordered colex, exterior
//! words lex, and labels of a tensor product lexicographically in factor order. Each
//! piece therefore identifies its basis with `0..dim`, and elements are stored as sparse
//! coordinate vectors in that basis.

mod element;
mod linear;
mod minors;
mod ops;
mod piece;
mod prolong;

use thiserror::Error;

pub use element::GradedElement;
pub use linear::apply_linear;
pub use minors::{det_map, edet_map, pair_map};
pub use ops::{coproduct, derive, koszul_delta, multiply, tensor};
pub use piece::{Factor, GradedPiece, Kind, Label, Space, Word};
pub use prolong::{prolong, prolong_vectors};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultilinearError {
    #[error("split ({a}, {b}) does not match factor power {power}")]
    SplitExceedsPower { power: usize, a: usize, b: usize },
    #[error("factor kinds do not fit the requested operation: {0}")]
    KindMismatch(String),
    #[error("factors live over different spaces: {0} and {1}")]
    SpaceMismatch(String, String),
    #[error("factor index {index} out of range for a piece with {len} factors")]
    FactorOutOfRange { index: usize, len: usize },
    #[error("invalid basis label {0}")]
    InvalidLabel(String),
    #[error("grading mismatch: expected {expected}, got {got}")]
    GradingMismatch { expected: String, got: String },
}
