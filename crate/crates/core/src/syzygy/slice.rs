use std::collections::{BTreeMap, HashMap};

use super::SyzygyError;
use crate::combinatorics::sort_sign;
use crate::geometry::{IdealComponent, Provenance};
use crate::linalg::{span_basis, vectors_rank, Rational, SparseVec, Subspace};
use crate::multilinear::{Factor, Kind, Space};

#[derive(Clone, Debug)]
struct Component {
    basis: Vec<SparseVec>,
    weights: Vec<Vec<u32>>,
    provenance: Provenance,
}

/// Selected graded pieces `I_d ⊆ S^d V` (or `Λ^d V` for exterior ideals).
#[derive(Clone, Debug)]
pub struct GradedIdealSlice {
    ambient: Space,
    kind: Kind,
    weights: Option<Vec<Vec<u32>>>,
    degrees: BTreeMap<usize, Component>,
}

impl GradedIdealSlice {
    /// `weights` are torus weights of the variables under which the ideal is stable; they
    /// split every computation into weight blocks.
    pub fn new(ambient: &Space, kind: Kind, weights: Option<Vec<Vec<u32>>>) -> Self {
        if let Some(w) = &weights {
            assert_eq!(w.len(), ambient.dim(), "one weight per variable");
        }
        GradedIdealSlice {
            ambient: ambient.clone(),
            kind,
            weights,
            degrees: BTreeMap::new(),
        }
    }

    pub fn ambient(&self) -> &Space {
        &self.ambient
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn weights(&self) -> Option<&[Vec<u32>]> {
        self.weights.as_deref()
    }

    pub fn factor(&self, d: usize) -> Factor {
        Factor::new(&self.ambient, d, self.kind)
    }

    /// Weight of a basis word.
    pub fn word_weight(&self, w: &[usize]) -> Vec<u32> {
        let Some(weights) = &self.weights else {
            return Vec::new();
        };
        let mut total = vec![0; weights.first().map_or(0, Vec::len)];
        for &l in w {
            for (t, x) in total.iter_mut().zip(&weights[l]) {
                *t += x;
            }
        }
        total
    }

    /// Adds `I_d`. The basis must be independent; with weights it is replaced by a
    /// weight-homogeneous basis of the same span. The ideal property against neighbouring
    /// degrees already present is checked exactly.
    pub fn with_degree(mut self, d: usize, basis: Vec<SparseVec>, provenance: Provenance) -> Result<Self, SyzygyError> {
        if vectors_rank(&basis) != basis.len() {
            return Err(SyzygyError::DependentBasis { degree: d });
        }
        let factor = self.factor(d);
        let (basis, weights) = if self.weights.is_some() {
            let mut parts: BTreeMap<Vec<u32>, Vec<SparseVec>> = BTreeMap::new();
            for v in &basis {
                let mut split: BTreeMap<Vec<u32>, Vec<(usize, Rational)>> = BTreeMap::new();
                for (i, c) in v.entries() {
                    split
                        .entry(self.word_weight(&factor.unrank(*i)))
                        .or_default()
                        .push((*i, c.clone()));
                }
                for (w, entries) in split {
                    parts.entry(w).or_default().push(SparseVec::from_pairs(entries));
                }
            }
            let mut hb = Vec::new();
            let mut hw = Vec::new();
            for (w, vs) in parts {
                for v in span_basis(&vs) {
                    hb.push(v);
                    hw.push(w.clone());
                }
            }
            if hb.len() != basis.len() {
                return Err(SyzygyError::NotHomogeneous { degree: d });
            }
            (hb, hw)
        } else {
            let n = basis.len();
            (basis, vec![Vec::new(); n])
        };
        self.degrees.insert(
            d,
            Component {
                basis,
                weights,
                provenance,
            },
        );
        if d > 0 && self.degrees.contains_key(&(d - 1)) {
            self.check_ideal_property(d - 1)?;
        }
        if self.degrees.contains_key(&(d + 1)) {
            self.check_ideal_property(d)?;
        }
        Ok(self)
    }

    /// Adds a computed ideal component.
    pub fn with_component(self, c: &IdealComponent) -> Result<Self, SyzygyError> {
        if c.ambient_dim != self.ambient.dim() {
            return Err(SyzygyError::Mismatch(format!(
                "component in dimension {} for a slice over {}",
                c.ambient_dim, self.ambient
            )));
        }
        self.with_degree(c.degree, c.basis.clone(), c.provenance)
    }

    pub fn basis(&self, d: usize) -> Option<&[SparseVec]> {
        self.degrees.get(&d).map(|c| c.basis.as_slice())
    }

    /// Weights of the homogeneous basis of `I_d`.
    pub fn basis_weights(&self, d: usize) -> Option<&[Vec<u32>]> {
        self.degrees.get(&d).map(|c| c.weights.as_slice())
    }

    pub fn degree_provenance(&self, d: usize) -> Option<Provenance> {
        self.degrees.get(&d).map(|c| c.provenance)
    }

    /// Sampled if any stored degree is sampled.
    pub fn provenance(&self) -> Provenance {
        if self.degrees.values().any(|c| c.provenance == Provenance::Sampled) {
            Provenance::Sampled
        } else {
            Provenance::Exact
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.degrees.keys().copied().collect()
    }

    /// Smallest degree with a nonzero stored component.
    pub fn initial_degree(&self) -> Option<usize> {
        self.degrees.iter().find(|(_, c)| !c.basis.is_empty()).map(|(d, _)| *d)
    }

    /// `x_i · I_d ⊆ I_(d+1)` for every variable, by exact membership.
    pub fn check_ideal_property(&self, d: usize) -> Result<(), SyzygyError> {
        let lower = self.degrees.get(&d).ok_or(SyzygyError::MissingDegree { degree: d })?;
        let upper = self
            .degrees
            .get(&(d + 1))
            .ok_or(SyzygyError::MissingDegree { degree: d + 1 })?;
        let small = self.factor(d);
        let big = self.factor(d + 1);
        // Membership is tested weight block by weight block.
        let mut by_weight: HashMap<Vec<u32>, Vec<SparseVec>> = HashMap::new();
        for (v, w) in upper.basis.iter().zip(&upper.weights) {
            by_weight.entry(w.clone()).or_default().push(v.clone());
        }
        let spaces: HashMap<Vec<u32>, Subspace> = by_weight
            .into_iter()
            .map(|(w, vs)| (w, Subspace::spanned_by(&vs)))
            .collect();
        let empty = Subspace::spanned_by(&[]);
        for (q, w) in lower.basis.iter().zip(&lower.weights) {
            let words: Vec<(Vec<usize>, &Rational)> = q.entries().iter().map(|(i, c)| (small.unrank(*i), c)).collect();
            for x in 0..self.ambient.dim() {
                let mut pairs = Vec::new();
                for (word, c) in &words {
                    let mut next = word.clone();
                    next.push(x);
                    let sign = match self.kind {
                        Kind::Sym => {
                            next.sort_unstable();
                            1
                        }
                        Kind::Ext => match sort_sign(&mut next) {
                            Some(s) => s,
                            None => continue,
                        },
                    };
                    pairs.push((big.rank(&next), *c * Rational::from_integer(sign.into())));
                }
                let product = SparseVec::from_pairs(pairs);
                if product.is_zero() {
                    continue;
                }
                let mut key = w.clone();
                if let Some(weights) = &self.weights {
                    for (t, y) in key.iter_mut().zip(&weights[x]) {
                        *t += y;
                    }
                }
                if !spaces.get(&key).unwrap_or(&empty).contains(&product) {
                    return Err(SyzygyError::NotAnIdeal { degree: d });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn homogenizes_and_checks_ideal_property() {
        let v = Space::new("V", 2);
        let weights = Some(vec![vec![1, 0], vec![0, 1]]);
        let s2 = Factor::sym(&v, 2);
        // x0^2 + x1^2 and x0^2 - x1^2 span the homogeneous x0^2, x1^2
        let a = SparseVec::from_pairs([(s2.rank(&[0, 0]), int(1)), (s2.rank(&[1, 1]), int(1))]);
        let b = SparseVec::from_pairs([(s2.rank(&[0, 0]), int(1)), (s2.rank(&[1, 1]), int(-1))]);
        let slice = GradedIdealSlice::new(&v, Kind::Sym, weights.clone())
            .with_degree(2, vec![a.clone(), b], Provenance::Exact)
            .unwrap();
        assert_eq!(slice.basis(2).unwrap().len(), 2);
        assert!(slice.basis(2).unwrap().iter().all(|v| v.nnz() == 1));

        let s3 = Factor::sym(&v, 3);
        let all3: Vec<SparseVec> = (0..s3.dim()).map(SparseVec::unit).collect();
        let slice = slice.with_degree(3, all3, Provenance::Sampled).unwrap();
        assert_eq!(slice.provenance(), Provenance::Sampled);

        let r =
            GradedIdealSlice::new(&v, Kind::Sym, weights.clone()).with_degree(2, vec![a.clone()], Provenance::Exact);
        assert!(matches!(r, Err(SyzygyError::NotHomogeneous { .. })));

        let only = vec![SparseVec::unit(s3.rank(&[0, 0, 0]))];
        let r = GradedIdealSlice::new(&v, Kind::Sym, weights.clone())
            .with_degree(2, vec![SparseVec::unit(s2.rank(&[0, 0]))], Provenance::Exact)
            .and_then(|s| s.with_degree(3, only, Provenance::Exact));
        assert!(matches!(r, Err(SyzygyError::NotAnIdeal { degree: 2 })));

        let r = GradedIdealSlice::new(&v, Kind::Sym, None).with_degree(2, vec![a.clone(), a], Provenance::Exact);
        assert!(matches!(r, Err(SyzygyError::DependentBasis { .. })));
    }
}
