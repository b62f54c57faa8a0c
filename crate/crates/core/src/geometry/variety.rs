use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::RngCore;
use serde::{Deserialize, Serialize};

use super::{random_rational, GeometryError};
use crate::linalg::Rational;
use crate::multilinear::{Factor, Space};

/// Exponent vector of a monomial in the chart coordinates.
pub type Exponent = Vec<u32>;

/// A polynomial in the chart coordinates.
pub type Polynomial = BTreeMap<Exponent, Rational>;

/// A variety given by a local parametrization `φ` whose jets `∂^α φ(t)` can be evaluated
/// exactly. Coordinates of `φ(t)` are the values of the basis linear forms `x_0, x_1, …`.
pub trait JetVariety: Sync {
    fn name(&self) -> String;

    fn ambient_dim(&self) -> usize;

    /// Number of chart coordinates.
    fn intrinsic_dim(&self) -> usize;

    /// `∂^α φ(t)` for an exponent vector `α` of length `intrinsic_dim`.
    fn jet(&self, t: &[Rational], alpha: &[usize]) -> Result<Vec<Rational>, GeometryError>;

    /// Torus weights of the coordinates when the parametrization is monomial. Every
    /// ideal computed from the variety is then spanned by weight-homogeneous forms.
    fn weights(&self) -> Option<Vec<Exponent>> {
        None
    }

    /// Coordinates of `∂^α φ` as polynomials, when available.
    fn polynomial_jet(&self, _alpha: &[usize]) -> Option<Vec<Polynomial>> {
        None
    }

    /// Draws a chart point.
    fn random_point(&self, rng: &mut dyn RngCore) -> Vec<Rational> {
        (0..self.intrinsic_dim()).map(|_| random_rational(rng)).collect()
    }
}

/// A polynomial map `t ↦ (φ_0(t), …, φ_N(t))`.
#[derive(Clone, Debug)]
pub struct PolynomialParametrization {
    name: String,
    nvars: usize,
    coords: Vec<Vec<(Exponent, Rational)>>,
}

impl PolynomialParametrization {
    pub fn new(name: &str, nvars: usize, coords: Vec<Vec<(Exponent, Rational)>>) -> Self {
        for c in &coords {
            for (e, _) in c {
                assert_eq!(e.len(), nvars, "exponent length must match chart dimension");
            }
        }
        PolynomialParametrization {
            name: name.to_string(),
            nvars,
            coords,
        }
    }

    /// Coordinates that are monomials with unit coefficient.
    pub fn monomial(name: &str, nvars: usize, exponents: Vec<Exponent>) -> Self {
        let coords = exponents.into_iter().map(|e| vec![(e, Rational::one())]).collect();
        Self::new(name, nvars, coords)
    }

    /// The rational normal curve `t ↦ (1, t, …, t^d)`.
    pub fn rational_normal_curve(d: usize) -> Self {
        Self::monomial(&format!("rnc({d})"), 1, (0..=d as u32).map(|i| vec![i]).collect())
    }

    /// Segre–Veronese embedding of `P^(dims_0 - 1) × …` by `O(degrees_0, …)` in the affine
    /// chart where each first homogeneous coordinate is 1. Coordinates are monomials
    /// ordered lexicographically over factors, colex within a factor.
    pub fn segre_veronese(dims: &[usize], degrees: &[usize]) -> Self {
        assert_eq!(dims.len(), degrees.len());
        assert!(dims.iter().all(|&d| d >= 1));
        let nvars: usize = dims.iter().map(|d| d - 1).sum();
        let mut exps: Vec<Exponent> = vec![vec![0; nvars]];
        let mut offset = 0;
        for (&n, &deg) in dims.iter().zip(degrees) {
            let factor = Factor::sym(&Space::new("V", n), deg);
            let mut next = Vec::with_capacity(exps.len() * factor.dim());
            for e in &exps {
                for w in factor.words() {
                    let mut e2 = e.clone();
                    for &letter in &w {
                        if letter > 0 {
                            e2[offset + letter - 1] += 1;
                        }
                    }
                    next.push(e2);
                }
            }
            exps = next;
            offset += n - 1;
        }
        let name = format!("segre_veronese({dims:?}, {degrees:?})");
        Self::monomial(&name, nvars, exps)
    }

    /// Segre embedding of `P^(dims_0 - 1) × …`.
    pub fn segre(dims: &[usize]) -> Self {
        let mut p = Self::segre_veronese(dims, &vec![1; dims.len()]);
        p.name = format!("segre({dims:?})");
        p
    }

    /// `P^1 × P^1` embedded by `O(a, b)`, coordinates `s^i u^j` at index `i (b+1) + j`.
    pub fn pencil_product(a: usize, b: usize) -> Self {
        let mut p = Self::segre_veronese(&[2, 2], &[a, b]);
        p.name = format!("pencil_product({a}, {b})");
        p
    }

    pub fn coordinates(&self) -> &[Vec<(Exponent, Rational)>] {
        &self.coords
    }

    fn max_degree(&self) -> Vec<u32> {
        let mut m = vec![0; self.nvars];
        for c in &self.coords {
            for (e, _) in c {
                for (mi, ei) in m.iter_mut().zip(e) {
                    *mi = (*mi).max(*ei);
                }
            }
        }
        m
    }
}

/// `e!/(e-a)!`, or `None` when `a > e`.
fn falling(e: u32, a: usize) -> Option<BigInt> {
    if a as u32 > e {
        return None;
    }
    let mut acc = BigInt::one();
    for k in 0..a as u32 {
        acc *= e - k;
    }
    Some(acc)
}

impl JetVariety for PolynomialParametrization {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn ambient_dim(&self) -> usize {
        self.coords.len()
    }

    fn intrinsic_dim(&self) -> usize {
        self.nvars
    }

    fn jet(&self, t: &[Rational], alpha: &[usize]) -> Result<Vec<Rational>, GeometryError> {
        if t.len() != self.nvars || alpha.len() != self.nvars {
            return Err(GeometryError::Chart(format!(
                "expected {} chart coordinates, got point of length {} and derivative of length {}",
                self.nvars,
                t.len(),
                alpha.len()
            )));
        }
        let maxdeg = self.max_degree();
        let powers: Vec<Vec<Rational>> = t
            .iter()
            .zip(&maxdeg)
            .map(|(x, &m)| {
                let mut p = vec![Rational::one()];
                for _ in 0..m {
                    let next = p.last().unwrap() * x;
                    p.push(next);
                }
                p
            })
            .collect();
        Ok(self
            .coords
            .iter()
            .map(|c| {
                let mut acc = Rational::zero();
                'term: for (e, coef) in c {
                    let mut v = coef.clone();
                    for i in 0..self.nvars {
                        match falling(e[i], alpha[i]) {
                            None => continue 'term,
                            Some(f) => {
                                v *= Rational::from_integer(f);
                                v *= &powers[i][(e[i] as usize) - alpha[i]];
                            }
                        }
                    }
                    acc += v;
                }
                acc
            })
            .collect())
    }

    fn weights(&self) -> Option<Vec<Exponent>> {
        self.coords
            .iter()
            .map(|c| match c.as_slice() {
                [(e, _)] => Some(e.clone()),
                _ => None,
            })
            .collect()
    }

    fn polynomial_jet(&self, alpha: &[usize]) -> Option<Vec<Polynomial>> {
        Some(
            self.coords
                .iter()
                .map(|c| {
                    let mut p = Polynomial::new();
                    for (e, coef) in c {
                        let mut v = coef.clone();
                        let mut rest = e.clone();
                        let mut alive = true;
                        for i in 0..self.nvars {
                            match falling(e[i], alpha[i]) {
                                None => {
                                    alive = false;
                                    break;
                                }
                                Some(f) => {
                                    v *= Rational::from_integer(f);
                                    rest[i] -= alpha[i] as u32;
                                }
                            }
                        }
                        if alive {
                            *p.entry(rest).or_insert_with(Rational::zero) += v;
                        }
                    }
                    p.retain(|_, v| !v.is_zero());
                    p
                })
                .collect(),
        )
    }
}

type JetCache = RwLock<HashMap<(Vec<Rational>, Vec<usize>), Arc<Vec<Rational>>>>;

/// Memoizes jets of another variety on `(t, α)`.
pub struct CachedJets<V> {
    inner: V,
    cache: JetCache,
}

impl<V: JetVariety> CachedJets<V> {
    pub fn new(inner: V) -> Self {
        CachedJets {
            inner,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn inner(&self) -> &V {
        &self.inner
    }
}

impl<V: JetVariety> JetVariety for CachedJets<V> {
    fn name(&self) -> String {
        self.inner.name()
    }

    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    fn intrinsic_dim(&self) -> usize {
        self.inner.intrinsic_dim()
    }

    fn jet(&self, t: &[Rational], alpha: &[usize]) -> Result<Vec<Rational>, GeometryError> {
        let key = (t.to_vec(), alpha.to_vec());
        if let Some(v) = self.cache.read().expect("jet cache poisoned").get(&key) {
            return Ok(v.as_ref().clone());
        }
        let v = Arc::new(self.inner.jet(t, alpha)?);
        let mut guard = self.cache.write().expect("jet cache poisoned");
        let stored = guard.entry(key).or_insert(v);
        Ok(stored.as_ref().clone())
    }

    fn weights(&self) -> Option<Vec<Exponent>> {
        self.inner.weights()
    }

    fn polynomial_jet(&self, alpha: &[usize]) -> Option<Vec<Polynomial>> {
        self.inner.polynomial_jet(alpha)
    }
}

/// JSON descriptor of a built-in variety.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum VarietySpec {
    Rnc { d: usize },
    Segre { dims: Vec<usize> },
    SegreVeronese { dims: Vec<usize>, degrees: Vec<usize> },
    PencilProduct { a: usize, b: usize },
}

impl VarietySpec {
    pub fn from_json(text: &str) -> Result<Self, GeometryError> {
        let spec: VarietySpec = serde_json::from_str(text).map_err(|e| GeometryError::Input(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), GeometryError> {
        let bad = |m: &str| Err(GeometryError::Input(m.to_string()));
        match self {
            VarietySpec::Rnc { d } if *d == 0 => bad("rnc needs d >= 1"),
            VarietySpec::Segre { dims } if dims.is_empty() || dims.contains(&0) => bad("segre needs positive dims"),
            VarietySpec::SegreVeronese { dims, degrees }
                if dims.len() != degrees.len() || dims.is_empty() || dims.contains(&0) =>
            {
                bad("segre_veronese needs matching nonempty dims and degrees")
            }
            _ => Ok(()),
        }
    }

    pub fn build(&self) -> PolynomialParametrization {
        match self {
            VarietySpec::Rnc { d } => PolynomialParametrization::rational_normal_curve(*d),
            VarietySpec::Segre { dims } => PolynomialParametrization::segre(dims),
            VarietySpec::SegreVeronese { dims, degrees } => PolynomialParametrization::segre_veronese(dims, degrees),
            VarietySpec::PencilProduct { a, b } => PolynomialParametrization::pencil_product(*a, *b),
        }
    }
}

/// Multi-indices `α` with `|α| ≤ k` in `n` variables: by total degree, colex within.
pub fn multi_indices_up_to(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for deg in 0..=k {
        out.extend(multi_indices_of_degree(n, deg));
    }
    out
}

pub fn multi_indices_of_degree(n: usize, deg: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if deg == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    crate::combinatorics::weak_compositions(deg, n)
}

/// Jets `∂^α φ(t)` for `|α| ≤ k`.
#[derive(Clone, Debug)]
pub struct OsculatingFrame {
    pub point: Vec<Rational>,
    pub order: usize,
    pub alphas: Vec<Vec<usize>>,
    pub vectors: Vec<Vec<Rational>>,
}

pub fn osculating_frame<X: JetVariety + ?Sized>(
    x: &X,
    t: &[Rational],
    k: usize,
) -> Result<OsculatingFrame, GeometryError> {
    let alphas = multi_indices_up_to(x.intrinsic_dim(), k);
    let vectors = alphas.iter().map(|a| x.jet(t, a)).collect::<Result<Vec<_>, _>>()?;
    Ok(OsculatingFrame {
        point: t.to_vec(),
        order: k,
        alphas,
        vectors,
    })
}

/// A random rational combination of the `k`-osculating frames at `q` random chart points:
/// a point of the cone over `σ_q τ^k X`.
pub fn sample_secant_osculating_point<X: JetVariety + ?Sized, R: RngCore>(
    x: &X,
    q: usize,
    k: usize,
    rng: &mut R,
) -> Result<Vec<Rational>, GeometryError> {
    let mut z = vec![Rational::zero(); x.ambient_dim()];
    for _ in 0..q {
        let t = x.random_point(rng);
        let frame = osculating_frame(x, &t, k)?;
        for v in &frame.vectors {
            let c = random_rational(rng);
            for (zi, vi) in z.iter_mut().zip(v) {
                *zi += &c * vi;
            }
        }
    }
    Ok(z)
}
