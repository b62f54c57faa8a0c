use num_bigint::BigInt;
use num_traits::One;

use super::ops::split_word;
use super::{Factor, GradedElement, GradedPiece, MultilinearError};
use crate::combinatorics::binomial;
use crate::linalg::{certified_kernel_basis, kernel_basis, Rational, SparseMatrix, SparseVec};

/// Basis of the `d`-th prolongation `Δ^{-1}(P^d ⊗ B)` of a subspace `B` of `factor`, where
/// `P` is the factor's kind and `B` is given by coordinate vectors.
pub fn prolong_vectors(factor: &Factor, b: &[SparseVec], d: usize) -> Vec<SparseVec> {
    let n = factor.dim();
    // Linear forms cutting out B.
    let annihilator = if b.is_empty() {
        (0..n).map(SparseVec::unit).collect()
    } else {
        kernel_basis(&SparseMatrix::from_sparse_rows(n, b.to_vec()))
    };
    let big = factor.with_power(factor.power + d);
    if annihilator.is_empty() {
        return (0..big.dim()).map(SparseVec::unit).collect();
    }
    let mut by_coord: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
    for (k, c) in annihilator.iter().enumerate() {
        for (t, v) in c.entries() {
            by_coord[*t].push((k, v.clone()));
        }
    }
    let head = factor.with_power(d);
    let ncomp = annihilator.len();
    let norm = Rational::new(BigInt::one(), BigInt::from(binomial(factor.power + d, d)));
    let columns: Vec<SparseVec> = (0..big.dim())
        .map(|col| {
            let w = big.unrank(col);
            let mut pairs = Vec::new();
            for (l, r, c) in split_word(factor.kind, &w, d) {
                let base = head.rank(&l) * ncomp;
                for (k, v) in &by_coord[factor.rank(&r)] {
                    pairs.push((base + k, &c * v * &norm));
                }
            }
            SparseVec::from_pairs(pairs)
        })
        .collect();
    let m = SparseMatrix::from_columns(head.dim() * ncomp, &columns);
    certified_kernel_basis(&m).expect("prolongation kernel certifies")
}

/// Prolongation of the span of `b`, all elements of the single-factor piece `S^(q+1)U` or
/// `Λ^(q+1)U`. The result lives in the same kind of power `q + d + 1`.
pub fn prolong(b: &[GradedElement], factor: &Factor, d: usize) -> Result<Vec<GradedElement>, MultilinearError> {
    let piece = GradedPiece::single(factor.clone());
    for e in b {
        if e.piece() != &piece {
            return Err(MultilinearError::GradingMismatch {
                expected: piece.to_string(),
                got: e.piece().to_string(),
            });
        }
    }
    let vectors: Vec<SparseVec> = b.iter().map(|e| e.coeffs().clone()).collect();
    let target = GradedPiece::single(factor.with_power(factor.power + d));
    Ok(prolong_vectors(factor, &vectors, d)
        .into_iter()
        .map(|v| GradedElement::from_vector(&target, v))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilinear::{det_map, Kind, Space};

    #[test]
    fn full_space_prolongs_to_full_space() {
        let u = Space::new("U", 3);
        let f = Factor::sym(&u, 2);
        let all: Vec<SparseVec> = (0..f.dim()).map(SparseVec::unit).collect();
        assert_eq!(prolong_vectors(&f, &all, 2).len(), Factor::sym(&u, 4).dim());
    }

    #[test]
    fn determinant_prolongs_to_wedge_product() {
        let u = Space::new("U", 3);
        let w = Space::new("W", 3);
        let p = GradedPiece::new(vec![Factor::ext(&u, 2), Factor::ext(&w, 2)]);
        let b: Vec<GradedElement> = (0..p.dim())
            .map(|i| det_map(&GradedElement::basis(&p, i)).unwrap())
            .collect();
        let factor = Factor::new(&u.tensor(&w), 2, Kind::Sym);
        assert_eq!(prolong(&b, &factor, 1).unwrap().len(), 1);
    }

    #[test]
    fn empty_subspace_prolongs_to_zero() {
        let f = Factor::ext(&Space::new("U", 4), 2);
        assert!(prolong_vectors(&f, &[], 1).is_empty());
    }
}
