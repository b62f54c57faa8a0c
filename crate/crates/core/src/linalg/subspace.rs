use num_traits::{One, Zero};

use super::rref::rref;
use super::{kernel_basis, Rational, SparseMatrix, SparseVec};

/// Canonical basis of the span: the nonzero rows of the reduced row-echelon form.
pub fn span_basis(vectors: &[SparseVec]) -> Vec<SparseVec> {
    let ncols = vectors.iter().map(SparseVec::support_bound).max().unwrap_or(0);
    let m = SparseMatrix::from_sparse_rows(ncols, vectors.to_vec());
    rref(&m)
        .pivot_rows()
        .iter()
        .map(|r| SparseVec::from_sorted_unchecked(r.clone()))
        .collect()
}

/// Basis of `span(a) ∩ span(b)`, via the kernel of `[A | -B]`.
pub fn intersect_subspaces(a: &[SparseVec], b: &[SparseVec]) -> Vec<SparseVec> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let nrows = a.iter().chain(b).map(SparseVec::support_bound).max().unwrap_or(0);
    let mut columns: Vec<SparseVec> = a.to_vec();
    columns.extend(b.iter().map(|v| v.scale(&-Rational::one())));
    let m = SparseMatrix::from_columns(nrows, &columns);
    let images: Vec<SparseVec> = kernel_basis(&m)
        .into_iter()
        .map(|k| {
            let mut acc = SparseVec::new();
            for (i, c) in k.entries() {
                if *i < a.len() {
                    acc = acc.axpy(c, &a[*i]);
                }
            }
            acc
        })
        .filter(|v| !v.is_zero())
        .collect();
    span_basis(&images)
}

/// A subspace in reduced echelon form, supporting exact membership and coordinates.
#[derive(Clone, Debug)]
pub struct Subspace {
    /// Reduced basis rows; row `i` has a unit at `pivots[i]`.
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn spanned_by(vectors: &[SparseVec]) -> Self {
        let rows = span_basis(vectors);
        let pivots = rows.iter().map(|r| r.entries()[0].0).collect();
        Subspace { rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Remainder of `v` after eliminating the pivot columns.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = r.get(pc);
            if !c.is_zero() {
                r = r.axpy(&-c, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` in the reduced basis, or `None` if `v` lies outside.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let coords = SparseVec::from_pairs(self.pivots.iter().enumerate().map(|(i, &pc)| (i, v.get(pc))));
        let mut rebuilt = SparseVec::new();
        for (i, c) in coords.entries() {
            rebuilt = rebuilt.axpy(c, &self.rows[*i]);
        }
        (rebuilt == *v).then_some(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> SparseVec {
        SparseVec::unit(i)
    }

    #[test]
    fn intersections() {
        assert_eq!(intersect_subspaces(&[e(0)], &[e(0)]), vec![e(0)]);
        assert!(intersect_subspaces(&[e(0)], &[e(1)]).is_empty());
        assert_eq!(intersect_subspaces(&[e(0), e(1)], &[e(1), e(2)]), vec![e(1)]);
    }

    #[test]
    fn membership_and_coordinates() {
        let a = e(0).axpy(&Rational::one(), &e(1));
        let s = Subspace::spanned_by(&[a.clone(), e(2)]);
        assert!(s.contains(&a.axpy(&Rational::one(), &e(2))));
        assert!(!s.contains(&e(0)));
        assert!(s.coordinates(&e(2)).is_some());
        assert!(s.coordinates(&e(1)).is_none());
    }
}
