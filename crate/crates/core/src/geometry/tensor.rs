use std::str::FromStr;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{random_rational, GeometryError, JetVariety};
use crate::linalg::{vectors_rank, Rational, SparseMatrix, SparseVec};
use crate::multilinear::{apply_linear, pair_map, Factor, GradedElement, GradedPiece, Kind, MultilinearError, Space};

/// A linear map `V_1 ⊗ … ⊗ V_ℓ → V`, stored as the image of every simple basis tensor.
/// Simple tensors `e_(j_1) ⊗ … ⊗ e_(j_ℓ)` are indexed in mixed radix, first factor most
/// significant, which matches the basis order of [`Space::tensor_all`].
#[derive(Clone, Debug, PartialEq)]
pub struct LinearTensor {
    sources: Vec<usize>,
    target: usize,
    images: Vec<SparseVec>,
}

#[derive(Serialize, Deserialize)]
struct TensorJson {
    sources: Vec<usize>,
    target: usize,
    coeffs: Vec<EntryJson>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    index: Vec<usize>,
    vector: Vec<String>,
}

impl LinearTensor {
    /// `entries` assigns images to simple basis tensors; the rest map to zero.
    pub fn new(
        sources: Vec<usize>,
        target: usize,
        entries: Vec<(Vec<usize>, SparseVec)>,
    ) -> Result<Self, GeometryError> {
        let total: usize = sources.iter().product();
        let mut images = vec![SparseVec::new(); total];
        let t = LinearTensor {
            sources,
            target,
            images: Vec::new(),
        };
        for (index, v) in entries {
            let flat = t.flat_index(&index)?;
            if v.support_bound() > target {
                return Err(GeometryError::Input(format!(
                    "image of {index:?} exceeds target dimension {target}"
                )));
            }
            images[flat] = v;
        }
        Ok(LinearTensor { images, ..t })
    }

    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn order(&self) -> usize {
        self.sources.len()
    }

    pub fn flat_index(&self, index: &[usize]) -> Result<usize, GeometryError> {
        if index.len() != self.sources.len() || index.iter().zip(&self.sources).any(|(j, n)| j >= n) {
            return Err(GeometryError::Input(format!(
                "index {index:?} outside sources {:?}",
                self.sources
            )));
        }
        Ok(index.iter().zip(&self.sources).fold(0, |acc, (j, n)| acc * n + j))
    }

    pub fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.sources.len()];
        for (slot, n) in out.iter_mut().zip(&self.sources).rev() {
            *slot = flat % n;
            flat /= n;
        }
        out
    }

    /// `T(e_(j_1) ⊗ … ⊗ e_(j_ℓ))` by flat index.
    pub fn image(&self, flat: usize) -> &SparseVec {
        &self.images[flat]
    }

    pub fn source_spaces(&self) -> Vec<Space> {
        self.sources
            .iter()
            .enumerate()
            .map(|(i, &n)| Space::new(&format!("V{}", i + 1), n))
            .collect()
    }

    pub fn target_space(&self) -> Space {
        Space::new("V", self.target)
    }

    /// Multiplication of binary forms `H^0(O(d_1)) ⊗ … → H^0(O(Σ d_i))` in monomial bases.
    pub fn rnc_multiplication(degrees: &[usize]) -> Self {
        let target = degrees.iter().sum::<usize>() + 1;
        let sources: Vec<usize> = degrees.iter().map(|d| d + 1).collect();
        let total: usize = sources.iter().product();
        let mut t = LinearTensor {
            sources,
            target,
            images: Vec::new(),
        };
        t.images = (0..total)
            .map(|f| SparseVec::unit(t.unflatten(f).iter().sum()))
            .collect();
        t
    }

    /// Multiplication of bihomogeneous forms on `P^1 × P^1`: sources `H^0(O(a_i, b_i))`
    /// with `s^i u^j` at index `i (b+1) + j`.
    pub fn pencil_multiplication(factors: &[(usize, usize)]) -> Self {
        let a: usize = factors.iter().map(|f| f.0).sum();
        let b: usize = factors.iter().map(|f| f.1).sum();
        let sources: Vec<usize> = factors.iter().map(|(x, y)| (x + 1) * (y + 1)).collect();
        let total: usize = sources.iter().product();
        let mut t = LinearTensor {
            sources,
            target: (a + 1) * (b + 1),
            images: Vec::new(),
        };
        t.images = (0..total)
            .map(|f| {
                let (mut i, mut j) = (0, 0);
                for (idx, (_, y)) in t.unflatten(f).iter().zip(factors) {
                    i += idx / (y + 1);
                    j += idx % (y + 1);
                }
                SparseVec::unit(i * (b + 1) + j)
            })
            .collect();
        t
    }

    /// The identity of `V_1 ⊗ … ⊗ V_ℓ`.
    pub fn segre_identity(dims: &[usize]) -> Self {
        let total: usize = dims.iter().product();
        LinearTensor {
            sources: dims.to_vec(),
            target: total,
            images: (0..total).map(SparseVec::unit).collect(),
        }
    }

    /// The `m × n` matrix of independent variables `x_(i n + j)`.
    pub fn generic_matrix(m: usize, n: usize) -> Self {
        Self::segre_identity(&[m, n])
    }

    pub fn from_json(text: &str) -> Result<Self, GeometryError> {
        let raw: TensorJson = serde_json::from_str(text).map_err(|e| GeometryError::Input(e.to_string()))?;
        let mut entries = Vec::with_capacity(raw.coeffs.len());
        for e in raw.coeffs {
            if e.vector.len() != raw.target {
                return Err(GeometryError::Input(format!(
                    "vector for {:?} has length {}, expected {}",
                    e.index,
                    e.vector.len(),
                    raw.target
                )));
            }
            let values = e
                .vector
                .iter()
                .map(|s| {
                    Rational::from_str(s.trim())
                        .map_err(|err| GeometryError::Input(format!("bad rational {s:?}: {err}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            entries.push((e.index, SparseVec::from_dense(&values)));
        }
        Self::new(raw.sources, raw.target, entries)
    }

    pub fn to_json(&self) -> String {
        let coeffs = self
            .images
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(f, v)| EntryJson {
                index: self.unflatten(f),
                vector: v.to_dense(self.target).iter().map(|c| c.to_string()).collect(),
            })
            .collect();
        serde_json::to_string(&TensorJson {
            sources: self.sources.clone(),
            target: self.target,
            coeffs,
        })
        .expect("tensor serializes")
    }

    /// `T(v_1 ⊗ … ⊗ v_ℓ)` for dense vectors.
    pub fn apply_simple(&self, vectors: &[Vec<Rational>]) -> SparseVec {
        let mut acc = SparseVec::new();
        for (f, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let idx = self.unflatten(f);
            let mut c = Rational::from_integer(1.into());
            for (v, j) in vectors.iter().zip(&idx) {
                c *= &v[*j];
                if c.is_zero() {
                    break;
                }
            }
            if !c.is_zero() {
                acc = acc.axpy(&c, img);
            }
        }
        acc
    }

    /// Entries of the dual image `T^*(z)`, by flat index.
    pub fn contract(&self, z: &[Rational]) -> Vec<Rational> {
        self.images
            .iter()
            .map(|img| img.entries().iter().map(|(i, c)| c * &z[*i]).sum())
            .collect()
    }
}

/// Sends `Λ^m V_1 ⊗ … ⊗ Λ^m V_ℓ` into a power of `V_1 ⊗ … ⊗ V_ℓ` by pairing the first
/// two factors repeatedly: `det`, then `edet`, then `det`, … The result is symmetric when
/// `ℓ` is even and exterior when `ℓ` is odd.
pub fn canonical_embedding(f: &GradedElement) -> Result<GradedElement, MultilinearError> {
    let piece = f.piece();
    let power = piece.factors().first().map(|x| x.power);
    if piece
        .factors()
        .iter()
        .any(|x| x.kind != Kind::Ext || Some(x.power) != power)
    {
        return Err(MultilinearError::KindMismatch(format!(
            "canonical embedding expects equal exterior powers, got {piece}"
        )));
    }
    let mut g = f.clone();
    while g.piece().len() > 1 {
        g = pair_map(&g, 0, 1)?;
    }
    Ok(g)
}

/// The matrix of `b_(q+1)(T): Λ^(q+1)V_1 ⊗ … ⊗ Λ^(q+1)V_ℓ → S^(q+1)V`: the canonical
/// embedding followed by `S^(q+1)T`. Columns follow the basis of the domain, rows the
/// monomial basis of `S^(q+1)V`. For odd `ℓ` the canonical embedding lands in an exterior
/// power and the matrix is zero.
pub fn b_map(t: &LinearTensor, q: usize) -> SparseMatrix<Rational> {
    let m = q + 1;
    let spaces = t.source_spaces();
    let domain = GradedPiece::new(spaces.iter().map(|s| Factor::ext(s, m)).collect());
    let target = t.target_space();
    let nrows = Factor::sym(&target, m).dim();
    if t.order() % 2 == 1 || t.order() == 0 {
        return SparseMatrix::from_columns(nrows, &vec![SparseVec::new(); domain.dim()]);
    }
    let image = |letter: usize| t.image(letter).clone();
    let columns: Vec<SparseVec> = (0..domain.dim())
        .into_par_iter()
        .map(|c| {
            let e = canonical_embedding(&GradedElement::basis(&domain, c)).expect("domain has equal exterior powers");
            apply_linear(&e, 0, &target, &image).into_coeffs()
        })
        .collect();
    SparseMatrix::from_columns(nrows, &columns)
}

/// Evidence against a multiplicativity property.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Witness {
    /// Nonzero vectors whose simple tensor `T` kills, as `p/q` strings.
    SimpleKernelVector(Vec<Vec<String>>),
    /// A chart point where a flattening of `T^*(φ(t))` has rank above one.
    FlatteningRank {
        point: Vec<String>,
        factor: usize,
        rank: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultiplicativityReport {
    pub one_generic: bool,
    pub one_generic_witness: Option<Witness>,
    pub x_simple: bool,
    pub x_simple_witness: Option<Witness>,
    pub samples: usize,
    pub seed: u64,
}

impl MultiplicativityReport {
    pub fn x_multiplicative(&self) -> bool {
        self.one_generic && self.x_simple
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

/// Tests `T` for 1-genericity on every basis simple tensor and then on `samples` random
/// ones, and for `X`-simplicity at `samples` random points of `X` by exact ranks of the
/// flattenings of `T^*(φ(t))`.
pub fn check_x_multiplicative<X: JetVariety + ?Sized>(
    t: &LinearTensor,
    x: &X,
    samples: usize,
    seed: u64,
) -> Result<MultiplicativityReport, GeometryError> {
    if x.ambient_dim() != t.target() {
        return Err(GeometryError::Input(format!(
            "variety lives in dimension {} but the tensor targets dimension {}",
            x.ambient_dim(),
            t.target()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unit = |n: usize, j: usize| {
        let mut v = vec![Rational::zero(); n];
        v[j] = Rational::from_integer(1.into());
        v
    };

    let mut one_generic_witness = None;
    for (f, img) in t.images.iter().enumerate() {
        if img.is_zero() {
            let idx = t.unflatten(f);
            let vs: Vec<Vec<String>> = idx
                .iter()
                .zip(&t.sources)
                .map(|(&j, &n)| strings(&unit(n, j)))
                .collect();
            one_generic_witness = Some(Witness::SimpleKernelVector(vs));
            break;
        }
    }
    if one_generic_witness.is_none() {
        for _ in 0..samples {
            let vs: Vec<Vec<Rational>> = t
                .sources
                .iter()
                .map(|&n| loop {
                    let v: Vec<Rational> = (0..n).map(|_| random_rational(&mut rng)).collect();
                    if v.iter().any(|c| !c.is_zero()) {
                        break v;
                    }
                })
                .collect();
            if t.apply_simple(&vs).is_zero() {
                one_generic_witness = Some(Witness::SimpleKernelVector(vs.iter().map(|v| strings(v)).collect()));
                break;
            }
        }
    }

    let mut x_simple_witness = None;
    let zero_alpha = vec![0; x.intrinsic_dim()];
    'points: for _ in 0..samples {
        let point = x.random_point(&mut rng);
        let z = x.jet(&point, &zero_alpha)?;
        let entries = t.contract(&z);
        for i in 0..t.order() {
            let rest: usize = t
                .sources
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, n)| n)
                .product();
            let mut rows = vec![Vec::new(); t.sources[i]];
            for (f, c) in entries.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let idx = t.unflatten(f);
                let col = idx
                    .iter()
                    .zip(&t.sources)
                    .enumerate()
                    .filter(|(k, _)| *k != i)
                    .fold(0, |acc, (_, (j, n))| acc * n + j);
                rows[idx[i]].push((col, c.clone()));
            }
            let rows: Vec<SparseVec> = rows.into_iter().map(SparseVec::from_pairs).collect();
            debug_assert!(rows.iter().all(|r| r.support_bound() <= rest));
            let rank = vectors_rank(&rows);
            if rank > 1 {
                x_simple_witness = Some(Witness::FlatteningRank {
                    point: strings(&point),
                    factor: i,
                    rank,
                });
                break 'points;
            }
        }
    }

    Ok(MultiplicativityReport {
        one_generic: one_generic_witness.is_none(),
        one_generic_witness,
        x_simple: x_simple_witness.is_none(),
        x_simple_witness,
        samples,
        seed,
    })
}
