use std::fmt;
use std::sync::Arc;

use crate::combinatorics::{binomial, colex_rank, colex_unrank, multichoose};

/// A sorted word of letter indices addressing one basis vector of a factor.
pub type Word = Vec<usize>;
/// One word per factor of a piece.
pub type Label = Vec<Word>;

/// A named vector space with basis `0..dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Space {
    name: Arc<str>,
    dim: usize,
}

impl Space {
    pub fn new(name: &str, dim: usize) -> Self {
        Space {
            name: Arc::from(name),
            dim,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The tensor product `self ⊗ other` with basis `(i, j) ↦ i * other.dim + j`.
    pub fn tensor(&self, other: &Space) -> Space {
        Space {
            name: Arc::from(format!("{}⊗{}", self.name, other.name)),
            dim: self.dim * other.dim,
        }
    }

    /// Iterated tensor product, lexicographic in factor order.
    pub fn tensor_all(spaces: &[Space]) -> Space {
        let mut it = spaces.iter();
        let first = it.next().expect("at least one space").clone();
        it.fold(first, |acc, s| acc.tensor(s))
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Sym,
    Ext,
}

/// `S^power(space)` or `Λ^power(space)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub space: Space,
    pub power: usize,
    pub kind: Kind,
}

impl Factor {
    pub fn new(space: &Space, power: usize, kind: Kind) -> Self {
        Factor {
            space: space.clone(),
            power,
            kind,
        }
    }

    pub fn sym(space: &Space, power: usize) -> Self {
        Factor::new(space, power, Kind::Sym)
    }

    pub fn ext(space: &Space, power: usize) -> Self {
        Factor::new(space, power, Kind::Ext)
    }

    pub fn with_power(&self, power: usize) -> Self {
        Factor::new(&self.space, power, self.kind)
    }

    pub fn dim(&self) -> usize {
        let n = self.space.dim();
        let d = match self.kind {
            Kind::Sym => multichoose(n, self.power),
            Kind::Ext => binomial(n, self.power),
        };
        usize::try_from(d).expect("dimension fits in usize")
    }

    pub fn is_valid(&self, w: &[usize]) -> bool {
        w.len() == self.power
            && w.iter().all(|&i| i < self.space.dim())
            && match self.kind {
                Kind::Sym => w.windows(2).all(|p| p[0] <= p[1]),
                Kind::Ext => w.windows(2).all(|p| p[0] < p[1]),
            }
    }

    /// Position of a valid word in the factor's basis order.
    pub fn rank(&self, w: &[usize]) -> usize {
        debug_assert!(self.is_valid(w), "invalid word {w:?} for {self}");
        let r = match self.kind {
            Kind::Sym => {
                let set: Vec<usize> = w.iter().enumerate().map(|(i, &m)| m + i).collect();
                colex_rank(&set)
            }
            Kind::Ext => {
                let n = self.space.dim();
                let rev: Vec<usize> = w.iter().rev().map(|&s| n - 1 - s).collect();
                binomial(n, w.len()) - 1 - colex_rank(&rev)
            }
        };
        r as usize
    }

    pub fn unrank(&self, r: usize) -> Word {
        let n = self.space.dim();
        let k = self.power;
        if k == 0 {
            return Vec::new();
        }
        match self.kind {
            Kind::Sym => {
                let set = colex_unrank(r as u64, k, n + k - 1);
                set.iter().enumerate().map(|(i, &c)| c - i).collect()
            }
            Kind::Ext => {
                let rev = colex_unrank(binomial(n, k) - 1 - r as u64, k, n);
                rev.iter().rev().map(|&t| n - 1 - t).collect()
            }
        }
    }

    pub fn words(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.dim()).map(move |r| self.unrank(r))
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.kind {
            Kind::Sym => "S",
            Kind::Ext => "Λ",
        };
        write!(f, "{op}^{}({})", self.power, self.space)
    }
}

/// A tensor product of symmetric and exterior powers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedPiece {
    factors: Vec<Factor>,
}

impl GradedPiece {
    pub fn new(factors: Vec<Factor>) -> Self {
        GradedPiece { factors }
    }

    pub fn single(factor: Factor) -> Self {
        GradedPiece { factors: vec![factor] }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> &Factor {
        &self.factors[i]
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(Factor::dim).product()
    }

    pub fn is_valid(&self, label: &[Word]) -> bool {
        label.len() == self.factors.len() && self.factors.iter().zip(label).all(|(f, w)| f.is_valid(w))
    }

    pub fn rank(&self, label: &[Word]) -> usize {
        let mut r = 0;
        for (f, w) in self.factors.iter().zip(label) {
            r = r * f.dim() + f.rank(w);
        }
        r
    }

    pub fn unrank(&self, mut r: usize) -> Label {
        let mut out = vec![Vec::new(); self.factors.len()];
        for (i, f) in self.factors.iter().enumerate().rev() {
            let d = f.dim();
            out[i] = f.unrank(r % d);
            r /= d;
        }
        out
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + '_ {
        (0..self.dim()).map(move |r| self.unrank(r))
    }

    /// Copy with factor `i` replaced by `replacement` (which may hold several factors).
    pub fn replace(&self, i: usize, replacement: &[Factor]) -> GradedPiece {
        let mut factors = self.factors[..i].to_vec();
        factors.extend_from_slice(replacement);
        factors.extend_from_slice(&self.factors[i + 1..]);
        GradedPiece { factors }
    }

    pub fn concat(&self, other: &GradedPiece) -> GradedPiece {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        GradedPiece { factors }
    }
}

impl fmt::Display for GradedPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "k");
        }
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "⊗")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exponents(w: &[usize], n: usize) -> Vec<usize> {
        let mut e = vec![0; n];
        for &i in w {
            e[i] += 1;
        }
        e
    }

    #[test]
    fn sym_order_is_colex_on_exponents() {
        let f = Factor::sym(&Space::new("U", 3), 3);
        let words: Vec<Word> = f.words().collect();
        assert_eq!(words.len(), 10);
        for (r, w) in words.iter().enumerate() {
            assert!(f.is_valid(w));
            assert_eq!(f.rank(w), r);
        }
        let keys: Vec<Vec<usize>> = words
            .iter()
            .map(|w| exponents(w, 3).into_iter().rev().collect())
            .collect();
        assert!(keys.windows(2).all(|k| k[0] < k[1]));
    }

    #[test]
    fn ext_order_is_lex() {
        let f = Factor::ext(&Space::new("U", 5), 3);
        let words: Vec<Word> = f.words().collect();
        assert_eq!(words.len(), 10);
        assert_eq!(words[0], vec![0, 1, 2]);
        assert_eq!(words[9], vec![2, 3, 4]);
        assert!(words.windows(2).all(|w| w[0] < w[1]));
        for (r, w) in words.iter().enumerate() {
            assert_eq!(f.rank(w), r);
        }
    }

    #[test]
    fn zero_spaces() {
        let u = Space::new("U", 2);
        assert_eq!(Factor::ext(&u, 3).dim(), 0);
        assert_eq!(Factor::ext(&u, 0).dim(), 1);
        assert_eq!(Factor::sym(&Space::new("Z", 0), 0).dim(), 1);
        let p = GradedPiece::new(vec![Factor::ext(&u, 3), Factor::sym(&u, 2)]);
        assert_eq!(p.dim(), 0);
    }

    #[test]
    fn tensor_labels_are_lexicographic() {
        let u = Space::new("U", 2);
        let w = Space::new("W", 3);
        let p = GradedPiece::new(vec![Factor::ext(&u, 1), Factor::sym(&w, 2)]);
        let labels: Vec<Label> = p.labels().collect();
        assert_eq!(labels.len(), 12);
        assert_eq!(labels[0], vec![vec![0], vec![0, 0]]);
        assert_eq!(labels[6], vec![vec![1], vec![0, 0]]);
        for (r, l) in labels.iter().enumerate() {
            assert_eq!(p.rank(l), r);
        }
    }
}
