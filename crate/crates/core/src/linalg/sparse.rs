use std::collections::BTreeMap;

use num_traits::Zero;

use super::{LinalgError, PrimeField, Rational};

/// A sparse rational vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Builds from arbitrary `(index, value)` pairs, summing duplicates and dropping zeros.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Rational)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, v) in pairs {
            *acc.entry(i).or_insert_with(Rational::zero) += v;
        }
        SparseVec {
            entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    /// Builds from pairs already sorted by index and free of zeros.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(usize, Rational)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        SparseVec { entries }
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, Rational::from_integer(1.into()))],
        }
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Rational)> {
        self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// `self + c * other`
    pub fn axpy(&self, c: &Rational, other: &SparseVec) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        let v = c * y;
                        if !v.is_zero() {
                            out.push((*j, v));
                        }
                        b.next();
                    } else {
                        let v = x + c * y;
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    let v = c * y;
                    if !v.is_zero() {
                        out.push((*j, v));
                    }
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn dot(&self, other: &SparseVec) -> Rational {
        let mut acc = Rational::zero();
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (i, x) = &self.entries[a];
            let (j, y) = &other.entries[b];
            match i.cmp(j) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    acc += x * y;
                    a += 1;
                    b += 1;
                }
            }
        }
        acc
    }

    pub fn reduce_mod(&self, field: &PrimeField) -> Result<Vec<(usize, u64)>, LinalgError> {
        let mut out = Vec::with_capacity(self.entries.len());
        for (i, v) in &self.entries {
            let r = field.reduce(v)?;
            if r != 0 {
                out.push((*i, r));
            }
        }
        Ok(out)
    }

    /// Largest index plus one (0 for the zero vector).
    pub fn support_bound(&self) -> usize {
        self.entries.last().map_or(0, |(i, _)| i + 1)
    }
}

/// Sparse matrix stored row-major; each row has strictly increasing column indices
/// and no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<T> {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, T)>>,
}

impl<T: Clone> SparseMatrix<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, r: usize) -> &[(usize, T)] {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[Vec<(usize, T)>] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub(crate) fn from_rows_unchecked(nrows: usize, ncols: usize, rows: Vec<Vec<(usize, T)>>) -> Self {
        debug_assert_eq!(rows.len(), nrows);
        SparseMatrix { nrows, ncols, rows }
    }

    pub fn transpose(&self) -> SparseMatrix<T> {
        let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); self.ncols];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                rows[*c].push((r, v.clone()));
            }
        }
        SparseMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            rows,
        }
    }
}

impl SparseMatrix<Rational> {
    pub fn from_sparse_rows(ncols: usize, rows: Vec<SparseVec>) -> Self {
        let nrows = rows.len();
        let rows: Vec<_> = rows
            .into_iter()
            .map(|r| {
                assert!(r.support_bound() <= ncols, "row entry outside column range");
                r.into_entries()
            })
            .collect();
        SparseMatrix { nrows, ncols, rows }
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, columns: &[SparseVec]) -> Self {
        let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); nrows];
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col.entries() {
                assert!(*r < nrows, "column entry outside row range");
                rows[*r].push((c, v.clone()));
            }
        }
        SparseMatrix {
            nrows,
            ncols: columns.len(),
            rows,
        }
    }

    pub fn from_dense(values: &[Vec<Rational>]) -> Self {
        let ncols = values.first().map_or(0, Vec::len);
        let rows = values
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ncols, "ragged dense matrix");
                SparseVec::from_dense(r).into_entries()
            })
            .collect();
        SparseMatrix {
            nrows: values.len(),
            ncols,
            rows,
        }
    }

    pub fn from_i64(values: &[Vec<i64>]) -> Self {
        let dense: Vec<Vec<Rational>> = values
            .iter()
            .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
            .collect();
        Self::from_dense(&dense)
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| vec![(i, Rational::from_integer(1.into()))]).collect();
        SparseMatrix {
            nrows: n,
            ncols: n,
            rows,
        }
    }

    pub fn row_vec(&self, r: usize) -> SparseVec {
        SparseVec::from_sorted_unchecked(self.rows[r].clone())
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let pairs = self.rows.iter().enumerate().filter_map(|(r, row)| {
            let row = SparseVec::from_sorted_unchecked(row.clone());
            let d = row.dot(v);
            (!d.is_zero()).then_some((r, d))
        });
        SparseVec::from_sorted_unchecked(pairs.collect())
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|r| SparseVec::from_sorted_unchecked(r.clone()).to_dense(self.ncols))
            .collect()
    }

    pub fn reduce_mod(&self, field: &PrimeField) -> Result<SparseMatrix<u64>, LinalgError> {
        let rows = self
            .rows
            .iter()
            .map(|r| SparseVec::from_sorted_unchecked(r.clone()).reduce_mod(field))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        })
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &SparseMatrix<Rational>) -> SparseMatrix<Rational> {
        assert_eq!(self.ncols, other.ncols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        SparseMatrix {
            nrows: self.nrows + other.nrows,
            ncols: self.ncols,
            rows,
        }
    }
}

impl SparseMatrix<u64> {
    pub fn from_modp_rows(ncols: usize, rows: Vec<Vec<(usize, u64)>>) -> Self {
        for r in &rows {
            debug_assert!(r.windows(2).all(|w| w[0].0 < w[1].0));
            debug_assert!(r.iter().all(|(c, v)| *c < ncols && *v != 0));
        }
        SparseMatrix {
            nrows: rows.len(),
            ncols,
            rows,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn from_pairs_merges_and_drops_zeros() {
        let v = SparseVec::from_pairs(vec![(3, rat(1, 2)), (1, rat(2, 1)), (3, rat(-1, 2))]);
        assert_eq!(v.entries(), &[(1, rat(2, 1))]);
    }

    #[test]
    fn axpy_cancels() {
        let a = SparseVec::from_pairs(vec![(0, rat(1, 1)), (2, rat(3, 1))]);
        let b = SparseVec::from_pairs(vec![(2, rat(1, 1)), (5, rat(1, 1))]);
        let c = a.axpy(&rat(-3, 1), &b);
        assert_eq!(c.entries(), &[(0, rat(1, 1)), (5, rat(-3, 1))]);
        assert_eq!(a.dot(&b), rat(3, 1));
    }

    #[test]
    fn transpose_and_mul() {
        let m = SparseMatrix::from_i64(&[vec![1, 2, 0], vec![0, 0, 3]]);
        let t = m.transpose();
        assert_eq!(t.nrows(), 3);
        assert_eq!(t.to_dense()[1], vec![rat(2, 1), rat(0, 1)]);
        let v = SparseVec::from_dense(&[rat(1, 1), rat(1, 1), rat(1, 1)]);
        assert_eq!(m.mul_vec(&v).to_dense(2), vec![rat(3, 1), rat(3, 1)]);
    }
}
