//! Exact computation of low-degree equations and bottom syzygies of secant varieties of
//! osculating varieties, built from tensors of linear forms.

pub mod combinatorics;
pub mod geometry;
pub mod linalg;
pub mod multilinear;
pub mod schur;
pub mod syzygy;

pub use geometry::{JetVariety, LinearTensor, PolynomialParametrization};
pub use linalg::{Rational, SparseMatrix, SparseVec};
pub use multilinear::{Factor, GradedElement, GradedPiece, Kind, Space};
pub use schur::Partition;
