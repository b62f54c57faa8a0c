//! Exact kernels of large systems through modular elimination.
//!
//! A system is row-reduced modulo random 62-bit primes, the standard-form kernel basis is
//! lifted to the rationals by Chinese remaindering and rational reconstruction, and every
//! lifted vector is checked against the exact system. Because the rank modulo `p` never
//! exceeds the rational rank, a fully verified lift of the modular kernel is exactly the
//! rational kernel: the verified vectors give the lower bound on its dimension and the
//! modular rank gives the upper bound.

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{crt, random_prime, rational_reconstruct};
use super::rref::{rref_modp, Rref};
use super::{LinalgError, PrimeField, Rational, SparseMatrix, SparseVec};

/// A homogeneous linear system with exact rational coefficients.
pub trait LinearSystem: Sync {
    fn ncols(&self) -> usize;

    /// The coefficient rows reduced modulo the field's prime.
    fn reduce_mod(&self, field: &PrimeField) -> Result<SparseMatrix<u64>, LinalgError>;

    /// Exact test that `v` solves every equation.
    fn annihilates(&self, v: &SparseVec) -> bool;
}

impl LinearSystem for SparseMatrix<Rational> {
    fn ncols(&self) -> usize {
        SparseMatrix::ncols(self)
    }

    fn reduce_mod(&self, field: &PrimeField) -> Result<SparseMatrix<u64>, LinalgError> {
        SparseMatrix::reduce_mod(self, field)
    }

    fn annihilates(&self, v: &SparseVec) -> bool {
        self.rows().iter().all(|row| {
            let mut acc = Rational::default();
            let (mut i, mut j) = (0, 0);
            let e = v.entries();
            while i < row.len() && j < e.len() {
                match row[i].0.cmp(&e[j].0) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        acc += &row[i].1 * &e[j].1;
                        i += 1;
                        j += 1;
                    }
                }
            }
            acc == Rational::default()
        })
    }
}

/// A linear system given column by column, with row indices fixed by the producer.
pub struct ColumnSystem<F> {
    nrows: usize,
    ncols: usize,
    column: F,
}

impl<F> ColumnSystem<F>
where
    F: Fn(usize) -> SparseVec + Sync,
{
    pub fn new(nrows: usize, ncols: usize, column: F) -> Self {
        ColumnSystem { nrows, ncols, column }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn column(&self, j: usize) -> SparseVec {
        (self.column)(j)
    }
}

impl<F> LinearSystem for ColumnSystem<F>
where
    F: Fn(usize) -> SparseVec + Sync,
{
    fn ncols(&self) -> usize {
        self.ncols
    }

    fn reduce_mod(&self, field: &PrimeField) -> Result<SparseMatrix<u64>, LinalgError> {
        let mut rows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); self.nrows];
        for j in 0..self.ncols {
            for (r, v) in (self.column)(j).reduce_mod(field)? {
                rows[r].push((j, v));
            }
        }
        Ok(SparseMatrix::from_modp_rows(self.ncols, rows))
    }

    fn annihilates(&self, v: &SparseVec) -> bool {
        let mut acc = SparseVec::new();
        for (j, c) in v.entries() {
            acc = acc.axpy(c, &(self.column)(*j));
        }
        acc.is_zero()
    }
}

/// Outcome of a certified kernel computation.
#[derive(Clone, Debug)]
pub struct CertifiedKernel {
    /// Standard-form basis (identical to the exact rational elimination result).
    pub basis: Vec<SparseVec>,
    pub pivots: Vec<usize>,
    /// Primes used for the modular images that were combined.
    pub primes: Vec<u64>,
}

impl CertifiedKernel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Tuning for [`certified_kernel`].
#[derive(Clone, Copy, Debug)]
pub struct CertifyOptions {
    pub seed: u64,
    /// Upper bound on the number of primes combined before giving up.
    pub max_primes: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            seed: 0x5eed_cafe,
            max_primes: 64,
        }
    }
}

struct Image {
    prime: u64,
    rref: Rref<u64>,
}

/// Exact rational kernel of `system` via modular images with exact verification.
pub fn certified_kernel<S: LinearSystem + ?Sized>(
    system: &S,
    opts: CertifyOptions,
) -> Result<CertifiedKernel, LinalgError> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut images: Vec<Image> = Vec::new();
    let mut last: Option<Vec<SparseVec>> = None;

    while images.len() < opts.max_primes {
        let p = random_prime(&mut rng, 62);
        let field = PrimeField::new(p);
        let reduced = match system.reduce_mod(&field) {
            Ok(m) => m,
            // p divides a denominator: draw another prime.
            Err(LinalgError::DenominatorDivisibleByP { .. }) => continue,
            Err(e) => return Err(e),
        };
        let img = Image {
            prime: p,
            rref: rref_modp(&reduced, &field),
        };
        // Unlucky primes have a smaller rank or a lexicographically later pivot set.
        if let Some(first) = images.first() {
            let ord = img
                .rref
                .rank()
                .cmp(&first.rref.rank())
                .reverse()
                .then_with(|| img.rref.pivots().cmp(first.rref.pivots()));
            match ord {
                std::cmp::Ordering::Greater => continue,
                std::cmp::Ordering::Less => {
                    images.clear();
                    last = None;
                }
                std::cmp::Ordering::Equal => {}
            }
        }
        if img.rref.rank() == system.ncols() {
            return Ok(CertifiedKernel {
                basis: Vec::new(),
                pivots: img.rref.pivots().to_vec(),
                primes: vec![img.prime],
            });
        }
        images.push(img);

        let Some(candidate) = lift(&images) else { continue };
        // Require two consecutive agreeing lifts before paying for verification.
        if last.as_ref() == Some(&candidate) && candidate.iter().all(|v| system.annihilates(v)) {
            return Ok(CertifiedKernel {
                basis: candidate,
                pivots: images[0].rref.pivots().to_vec(),
                primes: images.iter().map(|i| i.prime).collect(),
            });
        }
        last = Some(candidate);
    }
    Err(LinalgError::CertificationFailed {
        primes: opts.max_primes,
    })
}

fn lift(images: &[Image]) -> Option<Vec<SparseVec>> {
    let first = &images[0];
    let fields: Vec<PrimeField> = images.iter().map(|i| PrimeField::new(i.prime)).collect();
    let kernels: Vec<Vec<Vec<(usize, u64)>>> = images.iter().zip(&fields).map(|(i, f)| i.rref.kernel_modp(f)).collect();
    let mut modulus = BigInt::from(1);
    for i in images {
        modulus *= BigInt::from(i.prime);
    }
    let dim = kernels[0].len();
    let mut out = Vec::with_capacity(dim);
    for k in 0..dim {
        // Standard form fixes the support pattern up to entries vanishing mod a prime.
        let mut cols: Vec<usize> = kernels.iter().flat_map(|ker| ker[k].iter().map(|(c, _)| *c)).collect();
        cols.sort_unstable();
        cols.dedup();
        let mut entries = Vec::with_capacity(cols.len());
        for c in cols {
            let mut acc = BigInt::from(0);
            let mut m = BigInt::from(1);
            for (ker, img) in kernels.iter().zip(images) {
                let v = ker[k]
                    .binary_search_by_key(&c, |(j, _)| *j)
                    .map_or(0, |pos| ker[k][pos].1);
                acc = crt(&acc, &m, v, img.prime);
                m *= BigInt::from(img.prime);
            }
            let q = rational_reconstruct(&acc, &modulus)?;
            if q != Rational::default() {
                entries.push((c, q));
            }
        }
        out.push(SparseVec::from_sorted_unchecked(entries));
    }
    let _ = first;
    Some(out)
}

/// Convenience wrapper with default options.
pub fn certified_kernel_basis<S: LinearSystem + ?Sized>(system: &S) -> Result<Vec<SparseVec>, LinalgError> {
    certified_kernel(system, CertifyOptions::default()).map(|k| k.basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{kernel_basis, rat};

    #[test]
    fn agrees_with_exact_elimination() {
        let m = SparseMatrix::from_dense(&[
            vec![rat(1, 3), rat(2, 1), rat(0, 1), rat(5, 7)],
            vec![rat(2, 3), rat(4, 1), rat(1, 1), rat(1, 1)],
        ]);
        let k = certified_kernel_basis(&m).unwrap();
        assert_eq!(k, kernel_basis(&m));
    }

    #[test]
    fn full_rank_has_empty_kernel() {
        let k = certified_kernel(&SparseMatrix::identity(4), CertifyOptions::default()).unwrap();
        assert_eq!(k.dim(), 0);
        assert_eq!(k.pivots, vec![0, 1, 2, 3]);
    }

    #[test]
    fn column_system_matches_matrix() {
        let m = SparseMatrix::from_i64(&[vec![1, 2, 3, 4], vec![2, 4, 6, 9], vec![0, 0, 0, 1]]);
        let t = m.transpose();
        let sys = ColumnSystem::new(3, 4, |j| t.row_vec(j));
        assert_eq!(certified_kernel_basis(&sys).unwrap(), kernel_basis(&m));
    }
}
