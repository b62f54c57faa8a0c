//! Koszul cohomology of graded ideal components, the bottom-syzygy spaces of determinantal
//! and exterior-minor ideals, and explicit bottom syzygies built by box products.

mod cycles;
mod koszul;
mod products;
mod pushforward;
mod slice;

use thiserror::Error;

use crate::geometry::GeometryError;
use crate::linalg::LinalgError;
use crate::multilinear::MultilinearError;

pub use cycles::{bottom_cycles, bottom_cycles_by_intersection, koszul_cycles};
pub use koszul::{koszul_cohomology_dim, koszul_cohomology_dim_modp, KoszulSpot};
pub use products::{box0_product, box_product, box_product_from_preimage, BoxKind};
pub use pushforward::{nonvanishing_witness, pushforward_syzygy, standard_cycle};
pub use slice::GradedIdealSlice;

#[derive(Debug, Error)]
pub enum SyzygyError {
    #[error("ideal slice lacks degree {degree}")]
    MissingDegree { degree: usize },
    #[error("basis of degree {degree} is linearly dependent")]
    DependentBasis { degree: usize },
    #[error("basis of degree {degree} is not spanned by torus-weight homogeneous forms")]
    NotHomogeneous { degree: usize },
    #[error("multiplying degree {degree} by linear forms leaves the next degree")]
    NotAnIdeal { degree: usize },
    #[error("{0} is not a cycle")]
    NotACycle(String),
    #[error("no preimage under the Koszul differential")]
    NoPreimage,
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Multilinear(#[from] MultilinearError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
