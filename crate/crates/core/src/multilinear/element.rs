use std::fmt;

use num_traits::{One, Zero};

use super::{GradedPiece, Label, MultilinearError};
use crate::linalg::{Rational, SparseVec};

/// A vector in a graded piece, stored as sparse coordinates in the piece's basis order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    piece: GradedPiece,
    coeffs: SparseVec,
}

impl GradedElement {
    pub fn zero(piece: &GradedPiece) -> Self {
        GradedElement {
            piece: piece.clone(),
            coeffs: SparseVec::new(),
        }
    }

    /// Wraps coordinates; indices must lie below the piece dimension.
    pub fn from_vector(piece: &GradedPiece, coeffs: SparseVec) -> Self {
        assert!(
            coeffs.support_bound() <= piece.dim(),
            "coordinates exceed piece dimension"
        );
        GradedElement {
            piece: piece.clone(),
            coeffs,
        }
    }

    pub fn from_terms<I>(piece: &GradedPiece, terms: I) -> Result<Self, MultilinearError>
    where
        I: IntoIterator<Item = (Label, Rational)>,
    {
        let mut pairs = Vec::new();
        for (label, c) in terms {
            if !piece.is_valid(&label) {
                return Err(MultilinearError::InvalidLabel(format!("{label:?} in {piece}")));
            }
            pairs.push((piece.rank(&label), c));
        }
        Ok(GradedElement {
            piece: piece.clone(),
            coeffs: SparseVec::from_pairs(pairs),
        })
    }

    /// The basis vector with the given label.
    pub fn monomial(piece: &GradedPiece, label: Label) -> Result<Self, MultilinearError> {
        Self::from_terms(piece, [(label, Rational::one())])
    }

    pub fn basis(piece: &GradedPiece, index: usize) -> Self {
        assert!(index < piece.dim());
        GradedElement {
            piece: piece.clone(),
            coeffs: SparseVec::unit(index),
        }
    }

    pub fn piece(&self) -> &GradedPiece {
        &self.piece
    }

    pub fn coeffs(&self) -> &SparseVec {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> SparseVec {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.nnz()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Label, &Rational)> + '_ {
        self.coeffs.entries().iter().map(|(i, c)| (self.piece.unrank(*i), c))
    }

    pub fn coefficient(&self, label: &Label) -> Rational {
        if !self.piece.is_valid(label) {
            return Rational::zero();
        }
        self.coeffs.get(self.piece.rank(label))
    }

    fn check_same_piece(&self, other: &GradedElement) -> Result<(), MultilinearError> {
        if self.piece != other.piece {
            return Err(MultilinearError::GradingMismatch {
                expected: self.piece.to_string(),
                got: other.piece.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedElement) -> Result<GradedElement, MultilinearError> {
        self.axpy(&Rational::one(), other)
    }

    pub fn sub(&self, other: &GradedElement) -> Result<GradedElement, MultilinearError> {
        self.axpy(&-Rational::one(), other)
    }

    /// `self + c * other`
    pub fn axpy(&self, c: &Rational, other: &GradedElement) -> Result<GradedElement, MultilinearError> {
        self.check_same_piece(other)?;
        Ok(GradedElement {
            piece: self.piece.clone(),
            coeffs: self.coeffs.axpy(c, &other.coeffs),
        })
    }

    pub fn scale(&self, c: &Rational) -> GradedElement {
        GradedElement {
            piece: self.piece.clone(),
            coeffs: self.coeffs.scale(c),
        }
    }

    /// Applies a term-wise linear map. `image` pushes `(label, coefficient)` pairs of the
    /// image of one basis vector into the buffer; coefficients are scaled by the term's.
    pub(crate) fn map_terms<F>(&self, target: &GradedPiece, mut image: F) -> GradedElement
    where
        F: FnMut(&Label, &mut Vec<(Label, Rational)>),
    {
        let mut buf = Vec::new();
        let mut pairs = Vec::new();
        for (i, c) in self.coeffs.entries() {
            let label = self.piece.unrank(*i);
            buf.clear();
            image(&label, &mut buf);
            for (l, v) in buf.drain(..) {
                debug_assert!(target.is_valid(&l), "{l:?} not valid in {target}");
                pairs.push((target.rank(&l), v * c));
            }
        }
        GradedElement {
            piece: target.clone(),
            coeffs: SparseVec::from_pairs(pairs),
        }
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (label, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·{label:?}")?;
        }
        Ok(())
    }
}
