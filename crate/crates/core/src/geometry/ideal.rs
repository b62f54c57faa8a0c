use std::collections::{BTreeMap, HashMap};
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::variety::{multi_indices_up_to, sample_secant_osculating_point};
use super::{GeometryError, JetVariety, Polynomial, DEFAULT_SEED};
use crate::linalg::{
    certified_kernel_basis, span_basis, LinalgError, LinearSystem, PrimeField, Rational, SparseMatrix, SparseVec,
};
use crate::multilinear::{prolong_vectors, Factor, Space};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Jets,
    Sampling,
}

impl FromStr for Method {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "jets" => Ok(Method::Jets),
            "sampling" => Ok(Method::Sampling),
            other => Err(GeometryError::Input(format!("unknown method {other:?}"))),
        }
    }
}

/// Which pairs of jets a quadric must annihilate: `|β|, |γ| ≤ k` (`R3`) or `β = 0`,
/// `|γ| ≤ 2k+1` (`R1`). Both cut out the same quadrics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum JetRange {
    R1,
    R3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Proven equal to the ideal component.
    Exact,
    /// Cut out by finitely many random points; equal to the component with high
    /// probability.
    Sampled,
}

#[derive(Clone, Debug)]
pub struct IdealOptions {
    pub seed: u64,
    pub range: JetRange,
    /// Escalation budget: the largest number of points any linear system may use.
    pub max_points: usize,
}

impl Default for IdealOptions {
    fn default() -> Self {
        IdealOptions {
            seed: DEFAULT_SEED,
            range: JetRange::R3,
            max_points: 4096,
        }
    }
}

/// A basis of `I(σ_q τ^k X)_d` in the monomial basis of `S^d V`, in reduced echelon form.
#[derive(Clone, Debug, Serialize)]
pub struct IdealComponent {
    pub degree: usize,
    pub ambient_dim: usize,
    #[serde(skip)]
    pub basis: Vec<SparseVec>,
    pub provenance: Provenance,
    /// Largest number of chart or sample points used by any block.
    pub points_used: usize,
    pub seed: u64,
}

impl IdealComponent {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn factor(&self) -> Factor {
        Factor::sym(&Space::new("V", self.ambient_dim), self.degree)
    }
}

/// Groups the monomials of `factor` by total torus weight. Without weights, one block.
pub(crate) fn weight_blocks(factor: &Factor, weights: Option<&[Vec<u32>]>) -> Vec<Vec<usize>> {
    let Some(weights) = weights else {
        return vec![(0..factor.dim()).collect()];
    };
    let mut groups: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
    let width = weights.first().map_or(0, Vec::len);
    for (idx, w) in factor.words().enumerate() {
        let mut total = vec![0u32; width];
        for &letter in &w {
            for (t, x) in total.iter_mut().zip(&weights[letter]) {
                *t += x;
            }
        }
        groups.entry(total).or_default().push(idx);
    }
    groups.into_values().collect()
}

fn point_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Lazily generated points, each a pure function of `(seed, index)`.
struct PointPool<T, F> {
    make: F,
    cache: Mutex<HashMap<usize, Arc<T>>>,
}

impl<T, F> PointPool<T, F>
where
    F: Fn(usize) -> Result<T, GeometryError>,
{
    fn new(make: F) -> Self {
        PointPool {
            make,
            cache: Mutex::new(HashMap::new()),
        }
    }

    fn get(&self, i: usize) -> Result<Arc<T>, GeometryError> {
        if let Some(p) = self.cache.lock().expect("point pool poisoned").get(&i) {
            return Ok(p.clone());
        }
        let p = Arc::new((self.make)(i)?);
        Ok(self
            .cache
            .lock()
            .expect("point pool poisoned")
            .entry(i)
            .or_insert(p)
            .clone())
    }

    fn prefix(&self, m: usize) -> Result<Vec<Arc<T>>, GeometryError> {
        (0..m).map(|i| self.get(i)).collect()
    }
}

/// Jets of one chart point, indexed like the multi-index list of the range.
type JetPoint = Vec<Vec<Rational>>;

fn jet_pairs(n: usize, k: usize, range: JetRange) -> (usize, Vec<(usize, usize)>) {
    match range {
        JetRange::R3 => {
            let count = multi_indices_up_to(n, k).len();
            let pairs = (0..count).flat_map(|b| (b..count).map(move |c| (b, c))).collect();
            (k, pairs)
        }
        JetRange::R1 => {
            let count = multi_indices_up_to(n, 2 * k + 1).len();
            (2 * k + 1, (0..count).map(|c| (0, c)).collect())
        }
    }
}

/// Constraints `Q(J_β, J_γ) = 0` restricted to one block of quadratic monomials.
struct QuadricJetSystem<'a> {
    columns: &'a [(usize, usize)],
    pairs: &'a [(usize, usize)],
    points: Vec<Arc<JetPoint>>,
}

fn polar(a: &[Rational], b: &[Rational], i: usize, j: usize) -> Rational {
    if i == j {
        &a[i] * &b[i] * Rational::from_integer(2.into())
    } else {
        &a[i] * &b[j] + &a[j] * &b[i]
    }
}

impl LinearSystem for QuadricJetSystem<'_> {
    fn ncols(&self) -> usize {
        self.columns.len()
    }

    fn reduce_mod(&self, field: &PrimeField) -> Result<SparseMatrix<u64>, LinalgError> {
        let mut rows = Vec::with_capacity(self.points.len() * self.pairs.len());
        for pt in &self.points {
            let reduced: Vec<Vec<u64>> = pt
                .iter()
                .map(|v| v.iter().map(|c| field.reduce(c)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<_, _>>()?;
            for &(b, c) in self.pairs {
                let (x, y) = (&reduced[b], &reduced[c]);
                let mut row = Vec::new();
                for (col, &(i, j)) in self.columns.iter().enumerate() {
                    let v = if i == j {
                        field.mul(2, field.mul(x[i], y[i]))
                    } else {
                        field.add(field.mul(x[i], y[j]), field.mul(x[j], y[i]))
                    };
                    if v != 0 {
                        row.push((col, v));
                    }
                }
                rows.push(row);
            }
        }
        Ok(SparseMatrix::from_modp_rows(self.columns.len(), rows))
    }

    fn annihilates(&self, v: &SparseVec) -> bool {
        self.points.iter().all(|pt| {
            self.pairs.iter().all(|&(b, c)| {
                let mut acc = Rational::zero();
                for (col, coef) in v.entries() {
                    let (i, j) = self.columns[*col];
                    acc += coef * polar(&pt[b], &pt[c], i, j);
                }
                acc.is_zero()
            })
        })
    }
}

/// Evaluation of the degree-`d` monomials of one block at sample points scaled to
/// integer vectors.
struct EvaluationSystem<'a> {
    words: &'a [Vec<usize>],
    points: Vec<Arc<Vec<BigInt>>>,
}

impl LinearSystem for EvaluationSystem<'_> {
    fn ncols(&self) -> usize {
        self.words.len()
    }

    fn reduce_mod(&self, field: &PrimeField) -> Result<SparseMatrix<u64>, LinalgError> {
        let rows = self
            .points
            .iter()
            .map(|z| {
                let zp: Vec<u64> = z.iter().map(|c| field.from_bigint(c)).collect();
                self.words
                    .iter()
                    .enumerate()
                    .filter_map(|(col, w)| {
                        let v = w.iter().fold(1, |acc, &l| field.mul(acc, zp[l]));
                        (v != 0).then_some((col, v))
                    })
                    .collect()
            })
            .collect();
        Ok(SparseMatrix::from_modp_rows(self.words.len(), rows))
    }

    fn annihilates(&self, v: &SparseVec) -> bool {
        let lcm = v.entries().iter().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
        let ints: Vec<(usize, BigInt)> = v
            .entries()
            .iter()
            .map(|(col, c)| (*col, (c * &lcm).to_integer()))
            .collect();
        self.points.iter().all(|z| {
            let mut acc = BigInt::zero();
            for (col, coef) in &ints {
                acc += self.words[*col].iter().fold(coef.clone(), |acc, &l| acc * &z[l]);
            }
            acc.is_zero()
        })
    }
}

/// Solves one block with the doubling rule: the point count starts at `start` and doubles
/// until the kernel dimension has stayed the same for two consecutive doublings.
fn stabilized_block<F>(start: usize, max_points: usize, mut solve: F) -> Result<(Vec<SparseVec>, usize), GeometryError>
where
    F: FnMut(usize) -> Result<Vec<SparseVec>, GeometryError>,
{
    let mut m = start.max(1);
    let mut history: Vec<usize> = Vec::new();
    loop {
        if m > max_points {
            return Err(GeometryError::DegenerateOracle { points: max_points });
        }
        let basis = solve(m)?;
        if let Some(&last) = history.last() {
            assert!(basis.len() <= last, "adding points enlarged a solution space");
        }
        history.push(basis.len());
        let n = history.len();
        if n >= 3 && history[n - 1] == history[n - 2] && history[n - 2] == history[n - 3] {
            return Ok((basis, m));
        }
        m *= 2;
    }
}

/// Rows `(Q(J_β, J_γ))_Q` of the quadric jet constraints at one chart point, over all of
/// `S^2 V`. Exposed for cross-checks.
pub fn quadric_jet_rows<X: JetVariety + ?Sized>(
    x: &X,
    t: &[Rational],
    k: usize,
    range: JetRange,
) -> Result<Vec<SparseVec>, GeometryError> {
    let (order, pairs) = jet_pairs(x.intrinsic_dim(), k, range);
    let jets = multi_indices_up_to(x.intrinsic_dim(), order)
        .iter()
        .map(|a| x.jet(t, a))
        .collect::<Result<Vec<_>, _>>()?;
    let factor = Factor::sym(&Space::new("V", x.ambient_dim()), 2);
    Ok(pairs
        .iter()
        .map(|&(b, c)| {
            SparseVec::from_pairs(
                factor
                    .words()
                    .enumerate()
                    .map(|(idx, w)| (idx, polar(&jets[b], &jets[c], w[0], w[1]))),
            )
        })
        .collect())
}

fn poly_mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let mut out = Polynomial::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Checks `Q(J_β(t), J_γ(t)) ≡ 0` as polynomials in `t` for every pair in the range.
fn quadrics_vanish_symbolically<X: JetVariety + ?Sized>(
    x: &X,
    factor: &Factor,
    basis: &[SparseVec],
    order: usize,
    pairs: &[(usize, usize)],
) -> Option<bool> {
    let jets: Vec<Vec<Polynomial>> = multi_indices_up_to(x.intrinsic_dim(), order)
        .iter()
        .map(|a| x.polynomial_jet(a))
        .collect::<Option<_>>()?;
    let two = Rational::from_integer(2.into());
    Some(basis.par_iter().all(|q| {
        pairs.iter().all(|&(b, c)| {
            let mut acc = Polynomial::new();
            for (idx, coef) in q.entries() {
                let w = factor.unrank(*idx);
                let (i, j) = (w[0], w[1]);
                let mut term = poly_mul(&jets[b][i], &jets[c][j]);
                let other = if i == j {
                    None
                } else {
                    Some(poly_mul(&jets[b][j], &jets[c][i]))
                };
                if let Some(o) = other {
                    for (e, v) in o {
                        *term.entry(e).or_insert_with(Rational::zero) += v;
                    }
                } else {
                    for v in term.values_mut() {
                        *v *= &two;
                    }
                }
                for (e, v) in term {
                    *acc.entry(e).or_insert_with(Rational::zero) += v * coef;
                }
            }
            acc.values().all(Zero::is_zero)
        })
    }))
}

/// `I(τ^k X)_2` from jet constraints at random chart points.
fn tangent_quadrics<X: JetVariety + ?Sized>(
    x: &X,
    k: usize,
    opts: &IdealOptions,
) -> Result<(Vec<SparseVec>, Provenance, usize), GeometryError> {
    let n = x.intrinsic_dim();
    let factor = Factor::sym(&Space::new("V", x.ambient_dim()), 2);
    let (order, pairs) = jet_pairs(n, k, opts.range);
    let alphas = multi_indices_up_to(n, order);
    let pool = PointPool::new(|i| -> Result<JetPoint, GeometryError> {
        let mut rng = point_rng(opts.seed, i);
        let t = x.random_point(&mut rng);
        alphas.iter().map(|a| x.jet(&t, a)).collect()
    });
    let weights = x.weights();
    let blocks = weight_blocks(&factor, weights.as_deref());
    let block_words: Vec<Vec<(usize, usize)>> = blocks
        .iter()
        .map(|b| {
            b.iter()
                .map(|&idx| {
                    let w = factor.unrank(idx);
                    (w[0], w[1])
                })
                .collect()
        })
        .collect();

    let mut scale = 1;
    loop {
        let solved = blocks
            .par_iter()
            .zip(&block_words)
            .map(|(block, columns)| {
                let start = scale * columns.len().div_ceil(pairs.len());
                let (basis, used) = stabilized_block(start, opts.max_points, |m| {
                    let system = QuadricJetSystem {
                        columns,
                        pairs: &pairs,
                        points: pool.prefix(m)?,
                    };
                    Ok(certified_kernel_basis(&system)?)
                })?;
                let global: Vec<SparseVec> = basis
                    .into_iter()
                    .map(|v| SparseVec::from_pairs(v.entries().iter().map(|(c, val)| (block[*c], val.clone()))))
                    .collect();
                Ok((global, used))
            })
            .collect::<Result<Vec<_>, GeometryError>>()?;
        let used = solved.iter().map(|s| s.1).max().unwrap_or(0);
        let basis: Vec<SparseVec> = solved.into_iter().flat_map(|s| s.0).collect();
        match quadrics_vanish_symbolically(x, &factor, &basis, order, &pairs) {
            None => return Ok((basis, Provenance::Sampled, used)),
            Some(true) => return Ok((basis, Provenance::Exact, used)),
            Some(false) => {
                // The points did not cut out the system yet; start the doubling further up.
                scale *= 4;
                if scale > opts.max_points {
                    return Err(GeometryError::DegenerateOracle {
                        points: opts.max_points,
                    });
                }
            }
        }
    }
}

/// Forms of degree `degree` vanishing at random points of the cone over `σ_q τ^k X`.
pub fn sampled_ideal_component<X: JetVariety + ?Sized>(
    x: &X,
    degree: usize,
    q: usize,
    k: usize,
    opts: &IdealOptions,
) -> Result<IdealComponent, GeometryError> {
    let factor = Factor::sym(&Space::new("V", x.ambient_dim()), degree);
    let pool = PointPool::new(|i| -> Result<Vec<BigInt>, GeometryError> {
        let mut rng = point_rng(opts.seed, i);
        let z = sample_secant_osculating_point(x, q, k, &mut rng)?;
        let lcm = z.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        Ok(z.iter().map(|c| (c * &lcm).to_integer()).collect())
    });
    let weights = x.weights();
    let blocks = weight_blocks(&factor, weights.as_deref());
    let solved = blocks
        .par_iter()
        .map(|block| {
            let words: Vec<Vec<usize>> = block.iter().map(|&i| factor.unrank(i)).collect();
            let (basis, used) = stabilized_block(words.len(), opts.max_points, |m| {
                let system = EvaluationSystem {
                    words: &words,
                    points: pool.prefix(m)?,
                };
                Ok(certified_kernel_basis(&system)?)
            })?;
            let global: Vec<SparseVec> = basis
                .into_iter()
                .map(|v| SparseVec::from_pairs(v.entries().iter().map(|(c, val)| (block[*c], val.clone()))))
                .collect();
            Ok((global, used))
        })
        .collect::<Result<Vec<_>, GeometryError>>()?;
    let points_used = solved.iter().map(|s| s.1).max().unwrap_or(0);
    let basis: Vec<SparseVec> = solved.into_iter().flat_map(|s| s.0).collect();
    Ok(IdealComponent {
        degree,
        ambient_dim: x.ambient_dim(),
        basis: span_basis(&basis),
        provenance: Provenance::Sampled,
        points_used,
        seed: opts.seed,
    })
}

/// `I(σ_q τ^k X)_(q+1)`. The jets method finds `I(τ^k X)_2` from jet constraints, proves
/// it exact when the parametrization is polynomial, and prolongs it `q - 1` times; the
/// sampling method evaluates all degree `q+1` monomials at random points.
pub fn ideal_bottom_component<X: JetVariety + ?Sized>(
    x: &X,
    q: usize,
    k: usize,
    method: Method,
    opts: &IdealOptions,
) -> Result<IdealComponent, GeometryError> {
    if q == 0 {
        return Err(GeometryError::Input("q must be at least 1".into()));
    }
    match method {
        Method::Sampling => sampled_ideal_component(x, q + 1, q, k, opts),
        Method::Jets => {
            let (quadrics, provenance, points_used) = tangent_quadrics(x, k, opts)?;
            let s2 = Factor::sym(&Space::new("V", x.ambient_dim()), 2);
            let basis = if q == 1 {
                quadrics
            } else {
                prolong_vectors(&s2, &quadrics, q - 1)
            };
            Ok(IdealComponent {
                degree: q + 1,
                ambient_dim: x.ambient_dim(),
                basis: span_basis(&basis),
                provenance,
                points_used,
                seed: opts.seed,
            })
        }
    }
}
