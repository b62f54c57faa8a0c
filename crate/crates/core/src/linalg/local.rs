//! Elimination on sets of vectors whose supports are small subsets of a huge ambient
//! index range. Indices are renumbered densely before any matrix is built.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::certified::certified_kernel_basis;
use super::rref::{rref, rref_modp};
use super::{LinalgError, PrimeField, Rational, SparseMatrix, SparseVec};

/// Above this many unknowns, kernels go through the modular pipeline.
const DIRECT_LIMIT: usize = 400;

fn compress(vectors: &[SparseVec]) -> (usize, Vec<SparseVec>) {
    let mut slot: HashMap<usize, usize> = HashMap::new();
    let mut keys: Vec<usize> = vectors
        .iter()
        .flat_map(|v| v.entries().iter().map(|(i, _)| *i))
        .collect();
    keys.sort_unstable();
    keys.dedup();
    for (k, i) in keys.iter().enumerate() {
        slot.insert(*i, k);
    }
    let out = vectors
        .iter()
        .map(|v| SparseVec::from_sorted_unchecked(v.entries().iter().map(|(i, c)| (slot[i], c.clone())).collect()))
        .collect();
    (keys.len(), out)
}

/// Exact rank of a family of vectors.
pub fn vectors_rank(vectors: &[SparseVec]) -> usize {
    let (n, rows) = compress(vectors);
    rref(&SparseMatrix::from_sparse_rows(n, rows)).rank()
}

/// Rank of a family of vectors reduced modulo `p`; never exceeds [`vectors_rank`].
pub fn vectors_rank_modp(vectors: &[SparseVec], p: u64) -> Result<usize, LinalgError> {
    let field = PrimeField::new(p);
    let (n, rows) = compress(vectors);
    let reduced = rows
        .iter()
        .map(|r| r.reduce_mod(&field))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(rref_modp(&SparseMatrix::from_modp_rows(n, reduced), &field).rank())
}

/// Basis of the linear relations `x` with `Σ x_i columns[i] = 0`, in standard form.
pub fn column_kernel(columns: &[SparseVec]) -> Vec<SparseVec> {
    let (n, cols) = compress(columns);
    let m = SparseMatrix::from_columns(n, &cols);
    if columns.len() <= DIRECT_LIMIT {
        rref(&m).kernel()
    } else {
        certified_kernel_basis(&m).expect("kernel certifies")
    }
}

/// Some `x` with `Σ x_i columns[i] = b`, or `None` if `b` is outside the span.
pub fn solve(columns: &[SparseVec], b: &SparseVec) -> Option<SparseVec> {
    if b.is_zero() {
        return Some(SparseVec::new());
    }
    let mut all = columns.to_vec();
    all.push(b.scale(&-Rational::one()));
    let (n, cols) = compress(&all);
    let r = rref(&SparseMatrix::from_columns(n, &cols));
    let last = columns.len();
    if r.pivots().last() == Some(&last) {
        return None;
    }
    let x = r.kernel().into_iter().find(|v| !v.get(last).is_zero())?;
    let scale = x.get(last);
    Some(SparseVec::from_pairs(
        x.entries()
            .iter()
            .filter(|(i, _)| *i < last)
            .map(|(i, c)| (*i, c / &scale)),
    ))
}
