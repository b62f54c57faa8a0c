//! Partitions and dimensions of Schur modules.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::combinatorics::{binomial, multichoose, weak_compositions};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing: {0:?}")]
    NotDecreasing(Vec<usize>),
}

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Trailing zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, PartitionError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        Ok(Partition { parts })
    }

    /// The hook `(first, 1, …, 1)` with `ones` trailing ones; `first` must be positive.
    pub fn hook(first: usize, ones: usize) -> Self {
        assert!(first > 0, "hook needs a positive first part");
        let mut parts = vec![first];
        parts.extend(std::iter::repeat_n(1, ones));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0);
        let parts = (0..cols)
            .map(|j| self.parts.iter().filter(|&&r| r > j).count())
            .collect();
        Partition { parts }
    }

    /// All partitions of `t`, in reverse lexicographic order (`(t)` first).
    pub fn all_of(t: usize) -> Vec<Partition> {
        fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for part in (1..=left.min(max)).rev() {
                cur.push(part);
                rec(left - part, part, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(t, t, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `dim S^λ(k^n)` by the hook-content formula; zero when λ has more than `n` rows.
pub fn schur_dim(lambda: &Partition, n: usize) -> u64 {
    if lambda.len() > n {
        return 0;
    }
    let conj = lambda.conjugate();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            num *= n + j - i;
            let hook = (row - j - 1) + (conj.parts()[j] - i - 1) + 1;
            den *= hook;
        }
    }
    debug_assert!((&num % &den).is_zero());
    (num / den).to_u64().expect("Schur dimension fits in u64")
}

/// `(Σ_λ dim S^λ U · dim S^λ' W, Σ_λ dim S^λ U · dim S^λ W)` over partitions of `t`; these
/// decompose `Λ^t(U⊗W)` and `S^t(U⊗W)`.
pub fn cauchy_littlewood_dims(t: usize, nu: usize, nw: usize) -> (u64, u64) {
    let mut ext = 0;
    let mut sym = 0;
    for lambda in Partition::all_of(t) {
        let du = schur_dim(&lambda, nu);
        ext += du * schur_dim(&lambda.conjugate(), nw);
        sym += du * schur_dim(&lambda, nw);
    }
    (ext, sym)
}

/// Closed forms matching [`cauchy_littlewood_dims`].
pub fn cauchy_littlewood_expected(t: usize, nu: usize, nw: usize) -> (u64, u64) {
    (binomial(nu * nw, t), multichoose(nu * nw, t))
}

/// Ordered partitions of `p` with `len` entries, in colex order.
pub fn ordered_partitions(p: usize, len: usize) -> Vec<Vec<usize>> {
    weak_compositions(p, len)
}

/// Dimension report for bottom syzygies of secants of osculating varieties of a Segre
/// product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegreBottomDims {
    pub total: u64,
    /// Nonzero summands, indexed by ordered partition.
    pub summands: Vec<(Vec<usize>, u64)>,
    /// For an even number of factors `2k+2`: whether
    /// `(2k+1) p > Σ (dim V_i - q - 1)`, which forces the total to vanish.
    pub above_vanishing_threshold: Option<bool>,
}

/// `Σ_{p*} Π_i dim S^(p_i+1, 1^(p-p_i+q)) V_i` over ordered partitions `p*` of `p`.
pub fn bottom_syzygy_dims_segre(p: usize, q: usize, dims: &[usize]) -> SegreBottomDims {
    assert!(!dims.is_empty(), "need at least one factor");
    let mut total = 0;
    let mut summands = Vec::new();
    for pstar in ordered_partitions(p, dims.len()) {
        let term: u64 = pstar
            .iter()
            .zip(dims)
            .map(|(&pi, &n)| schur_dim(&Partition::hook(pi + 1, p - pi + q), n))
            .product();
        if term > 0 {
            summands.push((pstar, term));
            total += term;
        }
    }
    let l = dims.len();
    let above_vanishing_threshold = l.is_multiple_of(2).then(|| {
        let slack: i64 = dims.iter().map(|&d| d as i64 - q as i64 - 1).sum();
        (l as i64 - 1) * p as i64 > slack
    });
    SegreBottomDims {
        total,
        summands,
        above_vanishing_threshold,
    }
}

/// `Σ_{a+b=p} dim S^(a+1, 1^(b+q)) U · dim S^(b+1, 1^(a+q)) W`: the bottom row of the
/// resolution of the ideal of `(q+1)`-minors of a generic `nU × nW` matrix.
pub fn lascoux_bottom_dims(p: usize, q: usize, nu: usize, nw: usize) -> u64 {
    (0..=p)
        .map(|a| {
            let b = p - a;
            schur_dim(&Partition::hook(a + 1, b + q), nu) * schur_dim(&Partition::hook(b + 1, a + q), nw)
        })
        .sum()
}

/// `dim Z^{a,c}(U) = dim S^(a+1, 1^(c-1)) U`, the cycles of `δ^{a,c}` on `S^a ⊗ Λ^c`.
pub fn upper_cycle_dim(a: usize, c: usize, n: usize) -> u64 {
    if c == 0 {
        return u64::from(a == 0);
    }
    schur_dim(&Partition::hook(a + 1, c - 1), n)
}

/// `dim Z_{a,c}(U) = dim S^(c, 1^a) U`, the cycles of `δ_{a,c}` on `Λ^a ⊗ S^c`.
pub fn lower_cycle_dim(a: usize, c: usize, n: usize) -> u64 {
    if c == 0 {
        return u64::from(a == 0);
    }
    schur_dim(&Partition::hook(c, a), n)
}

/// `Σ_{a+b=p} dim Z^{a,b+q+1}(U) · dim Z^{b,a+q+1}(W)`.
pub fn green_lazarsfeld_sym_dims(p: usize, q: usize, nu: usize, nw: usize) -> u64 {
    (0..=p)
        .map(|a| upper_cycle_dim(a, p - a + q + 1, nu) * upper_cycle_dim(p - a, a + q + 1, nw))
        .sum()
}

/// `Σ_{a+b=p} dim Z_{a,b+q+1}(U) · dim Z^{b,a+q+1}(W)`.
pub fn green_lazarsfeld_ext_dims(p: usize, q: usize, nu: usize, nw: usize) -> u64 {
    (0..=p)
        .map(|a| lower_cycle_dim(a, p - a + q + 1, nu) * upper_cycle_dim(p - a, a + q + 1, nw))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugation() {
        let l = Partition::new(vec![3, 1, 0]).unwrap();
        assert_eq!(l.parts(), &[3, 1]);
        assert_eq!(l.conjugate().parts(), &[2, 1, 1]);
        assert_eq!(l.conjugate().conjugate(), l);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::all_of(4).len(), 5);
        assert_eq!(Partition::all_of(0), vec![Partition::new(vec![]).unwrap()]);
    }

    #[test]
    fn hook_content_examples() {
        let two_one = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(schur_dim(&two_one, 2), 2);
        assert_eq!(schur_dim(&two_one, 3), 8);
        assert_eq!(schur_dim(&Partition::new(vec![4]).unwrap(), 3), 15);
        assert_eq!(schur_dim(&Partition::hook(1, 2), 4), 4);
        assert_eq!(schur_dim(&Partition::hook(1, 2), 2), 0);
    }

    #[test]
    fn catalog_examples() {
        assert_eq!(cauchy_littlewood_dims(2, 2, 2), (6, 10));
        assert_eq!(cauchy_littlewood_dims(3, 2, 3).0, 20);
        assert_eq!(bottom_syzygy_dims_segre(0, 1, &[2, 2, 2, 2]).total, 1);
        let r = bottom_syzygy_dims_segre(1, 1, &[3, 3, 3, 2]);
        assert_eq!(r.total, 2);
        assert_eq!(r.summands, vec![(vec![0, 0, 0, 1], 2)]);
        let r = bottom_syzygy_dims_segre(2, 1, &[2, 2, 2, 2]);
        assert_eq!(r.total, 0);
        assert_eq!(r.above_vanishing_threshold, Some(true));
        assert_eq!(lascoux_bottom_dims(0, 1, 2, 3), 3);
        assert_eq!(lascoux_bottom_dims(1, 1, 2, 3), 2);
        assert_eq!(lascoux_bottom_dims(0, 2, 3, 3), 1);
    }
}
