//! Sparse Gauss-Jordan elimination.
//!
//! Rational matrices are eliminated fraction-free: every row is kept as a primitive
//! integer vector and rows are combined by cross-multiplication followed by content
//! removal, so no rational arithmetic happens until the final normalization. Prime-field
//! matrices use ordinary elimination on `u64` residues.
//!
//! Pivots are taken column by column in increasing order; within a column the sparsest
//! candidate row wins, ties broken by the smallest absolute entry and then by row index.
//! Elimination only touches rows that share a column with the pivot row, so matrices that
//! are block diagonal up to permutation are reduced block by block.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{LinalgError, PrimeField, Rational, SparseMatrix, SparseVec};

/// Reduced row-echelon form of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<T> {
    nrows: usize,
    ncols: usize,
    /// Pivot columns, strictly increasing.
    pivots: Vec<usize>,
    /// Row `i` has a unit entry at `pivots[i]` and zeros in every other pivot column.
    rows: Vec<Vec<(usize, T)>>,
}

impl<T: Clone> Rref<T> {
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivot_rows(&self) -> &[Vec<(usize, T)>] {
        &self.rows
    }

    /// The reduced matrix with the shape of the input (zero rows at the bottom).
    pub fn reduced(&self) -> SparseMatrix<T> {
        let mut rows = self.rows.clone();
        rows.resize(self.nrows.max(self.rows.len()), Vec::new());
        SparseMatrix::from_rows_unchecked(rows.len(), self.ncols, rows)
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Standard-form kernel basis: one vector per free column `f`, with a unit at `f`
    /// and `-R[i][f]` at pivot column `i`. `neg` negates a value.
    fn kernel_with(&self, one: T, neg: impl Fn(&T) -> T) -> Vec<Vec<(usize, T)>> {
        let free = self.free_columns();
        let mut slot = vec![usize::MAX; self.ncols];
        for (k, &f) in free.iter().enumerate() {
            slot[f] = k;
        }
        let mut out: Vec<Vec<(usize, T)>> = free.iter().map(|&f| vec![(f, one.clone())]).collect();
        for (i, row) in self.rows.iter().enumerate() {
            let pc = self.pivots[i];
            for (c, v) in row {
                if *c != pc {
                    let k = slot[*c];
                    debug_assert!(k != usize::MAX);
                    out[k].push((pc, neg(v)));
                }
            }
        }
        for v in &mut out {
            v.sort_by_key(|(c, _)| *c);
        }
        out
    }
}

impl Rref<Rational> {
    pub fn kernel(&self) -> Vec<SparseVec> {
        self.kernel_with(Rational::one(), |v| -v)
            .into_iter()
            .map(SparseVec::from_sorted_unchecked)
            .collect()
    }
}

impl Rref<u64> {
    pub fn kernel_modp(&self, field: &PrimeField) -> Vec<Vec<(usize, u64)>> {
        self.kernel_with(1, |v| field.neg(*v))
    }
}

fn entry<T>(row: &[(usize, T)], c: usize) -> Option<&T> {
    row.binary_search_by_key(&c, |(j, _)| *j).ok().map(|k| &row[k].1)
}

/// Bookkeeping for which rows may hold a nonzero in a column. Entries can be stale.
struct ColumnIndex {
    lists: Vec<Vec<usize>>,
    stamp: Vec<usize>,
    epoch: usize,
}

impl ColumnIndex {
    fn new<T>(ncols: usize, rows: &[Vec<(usize, T)>]) -> Self {
        let mut lists = vec![Vec::new(); ncols];
        for (r, row) in rows.iter().enumerate() {
            for (c, _) in row {
                lists[*c].push(r);
            }
        }
        ColumnIndex {
            lists,
            stamp: vec![usize::MAX; rows.len()],
            epoch: 0,
        }
    }

    /// Distinct rows recorded for column `c`; the list is consumed.
    fn take(&mut self, c: usize) -> Vec<usize> {
        self.epoch += 1;
        let list = std::mem::take(&mut self.lists[c]);
        let mut out = Vec::with_capacity(list.len());
        for r in list {
            if self.stamp[r] != self.epoch {
                self.stamp[r] = self.epoch;
                out.push(r);
            }
        }
        out
    }

    fn note<T>(&mut self, r: usize, after: usize, row: &[(usize, T)]) {
        for (c, _) in row {
            if *c > after {
                self.lists[*c].push(r);
            }
        }
    }
}

fn primitive_integer_row(row: &[(usize, Rational)]) -> Vec<(usize, BigInt)> {
    if row.is_empty() {
        return Vec::new();
    }
    let mut den = BigInt::one();
    for (_, v) in row {
        den = den.lcm(v.denom());
    }
    let mut ints: Vec<(usize, BigInt)> = row.iter().map(|(c, v)| (*c, v.numer() * (&den / v.denom()))).collect();
    make_primitive(&mut ints);
    ints
}

fn make_primitive(row: &mut [(usize, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// `a * row - b * pivot`, merged by column; zeros dropped.
fn combine_int(row: &[(usize, BigInt)], a: &BigInt, pivot: &[(usize, BigInt)], b: &BigInt) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push((ci, a * &row[i].1));
            i += 1;
        } else if cj < ci {
            out.push((cj, -(b * &pivot[j].1)));
            j += 1;
        } else {
            let v = a * &row[i].1 - b * &pivot[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Exact reduced row-echelon form over the rationals.
pub fn rref(m: &SparseMatrix<Rational>) -> Rref<Rational> {
    let ncols = m.ncols();
    let mut rows: Vec<Vec<(usize, BigInt)>> = m.rows().iter().map(|r| primitive_integer_row(r)).collect();
    let mut index = ColumnIndex::new(ncols, &rows);
    let mut is_pivot = vec![false; rows.len()];
    let mut pivots: Vec<(usize, usize)> = Vec::new();

    for c in 0..ncols {
        let touching: Vec<usize> = index
            .take(c)
            .into_iter()
            .filter(|&r| entry(&rows[r], c).is_some())
            .collect();
        let best = touching.iter().copied().filter(|&r| !is_pivot[r]).min_by(|&x, &y| {
            let ex = entry(&rows[x], c).unwrap().abs();
            let ey = entry(&rows[y], c).unwrap().abs();
            rows[x].len().cmp(&rows[y].len()).then(ex.cmp(&ey)).then(x.cmp(&y))
        });
        let Some(pr) = best else { continue };
        let pivot_row = std::mem::take(&mut rows[pr]);
        let pv = entry(&pivot_row, c).unwrap().clone();
        for &r in &touching {
            if r == pr {
                continue;
            }
            let rv = entry(&rows[r], c).unwrap().clone();
            let g = pv.gcd(&rv);
            let (a, b) = (&pv / &g, &rv / &g);
            let mut next = combine_int(&rows[r], &a, &pivot_row, &b);
            make_primitive(&mut next);
            index.note(r, c, &next);
            rows[r] = next;
        }
        rows[pr] = pivot_row;
        is_pivot[pr] = true;
        pivots.push((c, pr));
    }

    let out_rows = pivots
        .iter()
        .map(|&(c, r)| {
            let pv = entry(&rows[r], c).unwrap().clone();
            rows[r]
                .iter()
                .map(|(j, v)| (*j, Rational::new(v.clone(), pv.clone())))
                .collect()
        })
        .collect();
    Rref {
        nrows: m.nrows(),
        ncols,
        pivots: pivots.iter().map(|&(c, _)| c).collect(),
        rows: out_rows,
    }
}

/// Reduced row-echelon form over a prime field.
pub fn rref_modp(m: &SparseMatrix<u64>, field: &PrimeField) -> Rref<u64> {
    let ncols = m.ncols();
    let mut rows: Vec<Vec<(usize, u64)>> = m.rows().to_vec();
    let mut index = ColumnIndex::new(ncols, &rows);
    let mut is_pivot = vec![false; rows.len()];
    let mut pivots: Vec<(usize, usize)> = Vec::new();

    for c in 0..ncols {
        let touching: Vec<usize> = index
            .take(c)
            .into_iter()
            .filter(|&r| entry(&rows[r], c).is_some())
            .collect();
        let best = touching
            .iter()
            .copied()
            .filter(|&r| !is_pivot[r])
            .min_by(|&x, &y| rows[x].len().cmp(&rows[y].len()).then(x.cmp(&y)));
        let Some(pr) = best else { continue };
        let mut pivot_row = std::mem::take(&mut rows[pr]);
        let inv = field.inv(*entry(&pivot_row, c).unwrap());
        for (_, v) in pivot_row.iter_mut() {
            *v = field.mul(*v, inv);
        }
        for &r in &touching {
            if r == pr {
                continue;
            }
            let factor = *entry(&rows[r], c).unwrap();
            let next = axpy_modp(&rows[r], field.neg(factor), &pivot_row, field);
            index.note(r, c, &next);
            rows[r] = next;
        }
        rows[pr] = pivot_row;
        is_pivot[pr] = true;
        pivots.push((c, pr));
    }

    let out_rows = pivots.iter().map(|&(_, r)| std::mem::take(&mut rows[r])).collect();
    Rref {
        nrows: m.nrows(),
        ncols,
        pivots: pivots.iter().map(|&(c, _)| c).collect(),
        rows: out_rows,
    }
}

/// `row + f * pivot` over the field.
fn axpy_modp(row: &[(usize, u64)], f: u64, pivot: &[(usize, u64)], field: &PrimeField) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(row[i]);
            i += 1;
        } else if cj < ci {
            out.push((cj, field.mul(f, pivot[j].1)));
            j += 1;
        } else {
            let v = field.add(row[i].1, field.mul(f, pivot[j].1));
            if v != 0 {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn rank(m: &SparseMatrix<Rational>) -> usize {
    rref(m).rank()
}

/// Standard-form basis of the right kernel.
pub fn kernel_basis(m: &SparseMatrix<Rational>) -> Vec<SparseVec> {
    rref(m).kernel()
}

/// Rank of `m` reduced modulo `p`. Always at most the rational rank.
pub fn rank_modp(m: &SparseMatrix<Rational>, p: u64) -> Result<usize, LinalgError> {
    let field = PrimeField::new(p);
    let reduced = m.reduce_mod(&field)?;
    Ok(rref_modp(&reduced, &field).rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn identity_case() {
        let r = rref(&SparseMatrix::from_i64(&[vec![1, 0], vec![0, 1]]));
        assert_eq!(r.pivots(), &[0, 1]);
        assert_eq!(r.reduced(), SparseMatrix::identity(2));
    }

    #[test]
    fn rank_one_case() {
        let r = rref(&SparseMatrix::from_i64(&[vec![1, 2], vec![2, 4]]));
        assert_eq!(r.pivots(), &[0]);
        assert_eq!(
            r.reduced().to_dense(),
            vec![vec![rat(1, 1), rat(2, 1)], vec![rat(0, 1), rat(0, 1)]]
        );
    }

    #[test]
    fn empty_matrix() {
        let m: SparseMatrix<Rational> = SparseMatrix::zeros(0, 0);
        assert!(rref(&m).pivots().is_empty());
        let m: SparseMatrix<Rational> = SparseMatrix::zeros(0, 3);
        assert_eq!(kernel_basis(&m).len(), 3);
    }

    #[test]
    fn rational_entries_reduce_exactly() {
        let m = SparseMatrix::from_dense(&[vec![rat(1, 2), rat(1, 3)], vec![rat(1, 4), rat(1, 6)]]);
        let r = rref(&m);
        assert_eq!(r.pivots(), &[0]);
        assert_eq!(r.pivot_rows()[0], vec![(0, rat(1, 1)), (1, rat(2, 3))]);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&SparseMatrix::identity(3)).is_empty());
        let zero: SparseMatrix<Rational> = SparseMatrix::zeros(3, 4);
        let k = kernel_basis(&zero);
        assert_eq!(k, (0..4).map(SparseVec::unit).collect::<Vec<_>>());
        let k = kernel_basis(&SparseMatrix::from_i64(&[vec![1, 1, 1]]));
        assert_eq!(k.len(), 2);
        assert_eq!(k[0].to_dense(3), vec![rat(-1, 1), rat(1, 1), rat(0, 1)]);
        assert_eq!(k[1].to_dense(3), vec![rat(-1, 1), rat(0, 1), rat(1, 1)]);
    }

    #[test]
    fn modp_examples() {
        assert_eq!(rank_modp(&SparseMatrix::identity(5), 10007).unwrap(), 5);
        assert_eq!(
            rank_modp(&SparseMatrix::from_i64(&[vec![2, 4], vec![1, 2]]), 10007).unwrap(),
            1
        );
        let m = SparseMatrix::from_i64(&[vec![10007, 0], vec![0, 1]]);
        assert_eq!(rank_modp(&m, 10007).unwrap(), 1);
        assert_eq!(rank(&m), 2);
        let m = SparseMatrix::from_dense(&[vec![rat(1, 10007)]]);
        assert!(matches!(
            rank_modp(&m, 10007),
            Err(LinalgError::DenominatorDivisibleByP { .. })
        ));
    }
}
