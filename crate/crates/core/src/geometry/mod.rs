//! Parametrized varieties, tensors of linear forms, and the low-degree equations of
//! secant varieties of their osculating varieties.

mod dimension;
mod forms;
mod ideal;
mod tensor;
mod variety;

use num_bigint::BigInt;
use rand::{Rng, RngCore};
use thiserror::Error;

use crate::linalg::{LinalgError, Rational};
use crate::multilinear::MultilinearError;

pub use dimension::dim_estimate;
pub use forms::{evaluate_form, format_form, primitive_integer_form};
pub use ideal::{
    ideal_bottom_component, quadric_jet_rows, sampled_ideal_component, IdealComponent, IdealOptions, JetRange, Method,
    Provenance,
};
pub use tensor::{b_map, canonical_embedding, check_x_multiplicative, LinearTensor, MultiplicativityReport, Witness};
pub use variety::{
    multi_indices_of_degree, multi_indices_up_to, osculating_frame, sample_secant_osculating_point, CachedJets,
    Exponent, JetVariety, OsculatingFrame, Polynomial, PolynomialParametrization, VarietySpec,
};

/// Seed used when a caller does not choose one.
pub const DEFAULT_SEED: u64 = 0x05C0_1A7E;

/// Largest absolute numerator and denominator of random rationals.
pub const SAMPLE_HEIGHT: i64 = 10_000;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("chart error: {0}")]
    Chart(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("solution space did not stabilize within {points} points")]
    DegenerateOracle { points: usize },
    #[error(transparent)]
    Multilinear(#[from] MultilinearError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A rational with numerator in `[-10^4, 10^4]` and denominator in `[1, 10^4]`.
pub fn random_rational(rng: &mut dyn RngCore) -> Rational {
    let num = rng.gen_range(-SAMPLE_HEIGHT..=SAMPLE_HEIGHT);
    let den = rng.gen_range(1..=SAMPLE_HEIGHT);
    Rational::new(BigInt::from(num), BigInt::from(den))
}
