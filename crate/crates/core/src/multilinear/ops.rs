use num_bigint::BigInt;
use num_traits::One;

use super::{Factor, GradedElement, GradedPiece, Kind, Label, MultilinearError, Word};
use crate::combinatorics::{binomial, colex_unrank};
use crate::linalg::Rational;

fn check_index(piece: &GradedPiece, i: usize) -> Result<(), MultilinearError> {
    if i >= piece.len() {
        return Err(MultilinearError::FactorOutOfRange {
            index: i,
            len: piece.len(),
        });
    }
    Ok(())
}

fn check_same_space(a: &Factor, b: &Factor) -> Result<(), MultilinearError> {
    if a.space != b.space {
        return Err(MultilinearError::SpaceMismatch(
            a.space.to_string(),
            b.space.to_string(),
        ));
    }
    Ok(())
}

/// Distinct letters of a sorted word with multiplicities.
pub(crate) fn letter_counts(w: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &x in w {
        match out.last_mut() {
            Some((y, c)) if *y == x => *c += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

/// Number of pairs `(x, y)` with `x` in `a`, `y` in `b` and `x > y`; both sorted.
pub(crate) fn crossings(a: &[usize], b: &[usize]) -> usize {
    let mut count = 0;
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        count += j;
    }
    count
}

fn parity_sign(n: usize) -> Rational {
    if n.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Merge of two sorted words.
pub(crate) fn merge_sorted(a: &[usize], b: &[usize]) -> Word {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] <= b[j]) {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out
}

/// `u_a ∧ u_b` as `(sign, word)`, or `None` when the words overlap.
pub(crate) fn wedge_words(a: &[usize], b: &[usize]) -> Option<(Rational, Word)> {
    let w = merge_sorted(a, b);
    if w.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((parity_sign(crossings(a, b)), w))
}

/// The terms of `C(a+b, a) Δ(w)` in the split `(a, b)`, as `(left, right, coefficient)`.
pub(crate) fn split_word(kind: Kind, w: &[usize], a: usize) -> Vec<(Word, Word, Rational)> {
    let mut out = Vec::new();
    if a > w.len() {
        return out;
    }
    match kind {
        Kind::Sym => {
            let counts = letter_counts(w);
            let mut take = vec![0usize; counts.len()];
            fn rec(
                k: usize,
                left: usize,
                counts: &[(usize, usize)],
                take: &mut Vec<usize>,
                out: &mut Vec<(Word, Word, Rational)>,
            ) {
                if k == counts.len() {
                    if left == 0 {
                        let mut l = Vec::new();
                        let mut r = Vec::new();
                        let mut coef = BigInt::one();
                        for ((x, c), &t) in counts.iter().zip(take.iter()) {
                            l.extend(std::iter::repeat_n(*x, t));
                            r.extend(std::iter::repeat_n(*x, c - t));
                            coef *= binomial(*c, t);
                        }
                        out.push((l, r, Rational::from_integer(coef)));
                    }
                    return;
                }
                let (_, c) = counts[k];
                for t in 0..=c.min(left) {
                    take[k] = t;
                    rec(k + 1, left - t, counts, take, out);
                }
                take[k] = 0;
            }
            rec(0, a, &counts, &mut take, &mut out);
        }
        Kind::Ext => {
            let n = w.len();
            for r in 0..binomial(n, a) {
                let positions = colex_unrank(r, a, n);
                let inversions: usize = positions.iter().enumerate().map(|(j, &p)| p - j).sum();
                let mut chosen = vec![false; n];
                for &p in &positions {
                    chosen[p] = true;
                }
                let l: Word = positions.iter().map(|&p| w[p]).collect();
                let rest: Word = (0..n).filter(|&p| !chosen[p]).map(|p| w[p]).collect();
                out.push((l, rest, parity_sign(inversions)));
            }
        }
    }
    out
}

/// The coproduct `Δ` on factor `index`, split into powers `(a, b)` of the same kind.
///
/// Normalized so that multiplying the two new factors back together is the identity.
pub fn coproduct(f: &GradedElement, index: usize, (a, b): (usize, usize)) -> Result<GradedElement, MultilinearError> {
    let piece = f.piece();
    check_index(piece, index)?;
    let factor = piece.factor(index);
    if a + b != factor.power {
        return Err(MultilinearError::SplitExceedsPower {
            power: factor.power,
            a,
            b,
        });
    }
    let target = piece.replace(index, &[factor.with_power(a), factor.with_power(b)]);
    let norm = Rational::new(BigInt::one(), BigInt::from(binomial(a + b, a)));
    let kind = factor.kind;
    Ok(f.map_terms(&target, |label, out| {
        for (l, r, c) in split_word(kind, &label[index], a) {
            let mut next: Label = label[..index].to_vec();
            next.push(l);
            next.push(r);
            next.extend_from_slice(&label[index + 1..]);
            out.push((next, c * &norm));
        }
    }))
}

/// Multiplies factor `j` into factor `i` (`x_i · x_j`, resp. `x_i ∧ x_j`); the result sits
/// at position `i` and factor `j` is removed.
pub fn multiply(f: &GradedElement, i: usize, j: usize) -> Result<GradedElement, MultilinearError> {
    let piece = f.piece();
    check_index(piece, i)?;
    check_index(piece, j)?;
    if i == j {
        return Err(MultilinearError::KindMismatch(
            "cannot multiply a factor with itself".into(),
        ));
    }
    let (fi, fj) = (piece.factor(i), piece.factor(j));
    check_same_space(fi, fj)?;
    if fi.kind != fj.kind {
        return Err(MultilinearError::KindMismatch(format!("{fi} and {fj}")));
    }
    let kind = fi.kind;
    let merged = fi.with_power(fi.power + fj.power);
    let mut factors = piece.factors().to_vec();
    factors[i] = merged;
    factors.remove(j);
    let target = GradedPiece::new(factors);
    Ok(f.map_terms(&target, |label, out| {
        let product = match kind {
            Kind::Sym => Some((Rational::one(), merge_sorted(&label[i], &label[j]))),
            Kind::Ext => wedge_words(&label[i], &label[j]),
        };
        if let Some((c, w)) = product {
            let mut next = label.clone();
            next[i] = w;
            next.remove(j);
            out.push((next, c));
        }
    }))
}

/// Tensor product `f ⊗ g` in the concatenated piece.
pub fn tensor(f: &GradedElement, g: &GradedElement) -> GradedElement {
    let target = f.piece().concat(g.piece());
    let g_terms: Vec<(Label, Rational)> = g.terms().map(|(l, c)| (l, c.clone())).collect();
    f.map_terms(&target, |label, out| {
        for (l, c) in &g_terms {
            let mut next = label.clone();
            next.extend(l.iter().cloned());
            out.push((next, c.clone()));
        }
    })
}

/// Image of a single word under `∂^d`, as `(coefficient, remaining word)`.
pub(crate) fn derive_word(kind: Kind, d: &[usize], w: &[usize]) -> Option<(Rational, Word)> {
    match kind {
        Kind::Sym => {
            let mut rest = Vec::with_capacity(w.len());
            let mut coef = BigInt::one();
            let mut j = 0;
            for (x, c) in letter_counts(w) {
                let mut take = 0;
                while j < d.len() && d[j] == x {
                    take += 1;
                    j += 1;
                }
                if take > c {
                    return None;
                }
                for k in 0..take {
                    coef *= c - k;
                }
                rest.extend(std::iter::repeat_n(x, c - take));
            }
            if j < d.len() {
                return None;
            }
            Some((Rational::from_integer(coef), rest))
        }
        Kind::Ext => {
            let mut rest = Vec::with_capacity(w.len());
            let mut j = 0;
            for &x in w {
                if j < d.len() && d[j] == x {
                    j += 1;
                } else {
                    rest.push(x);
                }
            }
            if j < d.len() {
                return None;
            }
            Some((parity_sign(crossings(d, &rest)), rest))
        }
    }
}

/// Applies `∂^d` to factor `index`: the formal derivative `∂^α u^β = β!/(β-α)! u^(β-α)`
/// on symmetric factors, the signed contraction `∂_α u_S = sgn(α, S∖α) u_(S∖α)` on
/// exterior ones. `d` is a sorted word of the factor's kind.
pub fn derive(d: &[usize], index: usize, f: &GradedElement) -> Result<GradedElement, MultilinearError> {
    let piece = f.piece();
    check_index(piece, index)?;
    let factor = piece.factor(index);
    let dfac = factor.with_power(d.len());
    if !dfac.is_valid(d) {
        return Err(MultilinearError::InvalidLabel(format!(
            "{d:?} as a derivative on {factor}"
        )));
    }
    let target = piece.replace(index, &[factor.with_power(factor.power.saturating_sub(d.len()))]);
    if d.len() > factor.power {
        return Ok(GradedElement::zero(&target));
    }
    let kind = factor.kind;
    Ok(f.map_terms(&target, |label, out| {
        if let Some((c, rest)) = derive_word(kind, d, &label[index]) {
            let mut next = label.clone();
            next[index] = rest;
            out.push((next, c));
        }
    }))
}

/// Koszul differential: splits one degree off factor `from` and multiplies it into factor
/// `into`. With kinds `(Ext, Sym)` this is `δ_{a,b}: Λ^a ⊗ S^b → Λ^(a-1) ⊗ S^(b+1)`; with
/// `(Sym, Ext)` it is `δ^{a,b}: S^a ⊗ Λ^b → S^(a-1) ⊗ Λ^(b+1)`, wedging on the left.
pub fn koszul_delta(f: &GradedElement, from: usize, into: usize) -> Result<GradedElement, MultilinearError> {
    let piece = f.piece();
    check_index(piece, from)?;
    check_index(piece, into)?;
    let (src, dst) = (piece.factor(from), piece.factor(into));
    if from == into || src.kind == dst.kind {
        return Err(MultilinearError::KindMismatch(format!("{src} and {dst}")));
    }
    check_same_space(src, dst)?;
    let mut factors = piece.factors().to_vec();
    factors[from] = src.with_power(src.power.saturating_sub(1));
    factors[into] = dst.with_power(dst.power + 1);
    let target = GradedPiece::new(factors);
    if src.power == 0 {
        return Ok(GradedElement::zero(&target));
    }
    let a = src.power;
    let inv_a = Rational::new(BigInt::one(), BigInt::from(a));
    let src_kind = src.kind;
    Ok(f.map_terms(&target, |label, out| {
        delta_terms(src_kind, &label[from], &label[into], &inv_a, |w_from, w_into, c| {
            let mut next = label.clone();
            next[from] = w_from;
            next[into] = w_into;
            out.push((next, c));
        });
    }))
}

/// Terms of the Koszul differential on one pair of words.
pub(crate) fn delta_terms(
    src_kind: Kind,
    w_from: &[usize],
    w_into: &[usize],
    inv_a: &Rational,
    mut emit: impl FnMut(Word, Word, Rational),
) {
    let a = w_from.len();
    match src_kind {
        Kind::Ext => {
            // Δ moves letter r to the end with sign (-1)^(a-1-r), then multiplies it in.
            for r in 0..a {
                let x = w_from[r];
                let mut rest = w_from.to_vec();
                rest.remove(r);
                let pos = w_into.partition_point(|&y| y <= x);
                let mut into = w_into.to_vec();
                into.insert(pos, x);
                emit(rest, into, parity_sign(a - 1 - r) * inv_a);
            }
        }
        Kind::Sym => {
            let mut start = 0;
            for (x, c) in letter_counts(w_from) {
                let pos = w_into.partition_point(|&y| y < x);
                if pos < w_into.len() && w_into[pos] == x {
                    start += c;
                    continue;
                }
                let mut rest = w_from.to_vec();
                rest.remove(start);
                let mut into = w_into.to_vec();
                into.insert(pos, x);
                let coef = Rational::from_integer(BigInt::from(c)) * inv_a;
                emit(rest, into, parity_sign(pos) * coef);
                start += c;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};
    use crate::multilinear::Space;

    fn elt(piece: &GradedPiece, terms: &[(Label, Rational)]) -> GradedElement {
        GradedElement::from_terms(piece, terms.iter().cloned()).unwrap()
    }

    #[test]
    fn coproduct_examples() {
        let u = Space::new("U", 2);
        let s2 = GradedPiece::single(Factor::sym(&u, 2));
        let f = elt(&s2, &[(vec![vec![0, 0]], int(1))]);
        let d = coproduct(&f, 0, (1, 1)).unwrap();
        let p11 = GradedPiece::new(vec![Factor::sym(&u, 1), Factor::sym(&u, 1)]);
        assert_eq!(d, elt(&p11, &[(vec![vec![0], vec![0]], int(1))]));

        let l2 = GradedPiece::single(Factor::ext(&u, 2));
        let f = elt(&l2, &[(vec![vec![0, 1]], int(1))]);
        let d = coproduct(&f, 0, (1, 1)).unwrap();
        let e11 = GradedPiece::new(vec![Factor::ext(&u, 1), Factor::ext(&u, 1)]);
        assert_eq!(
            d,
            elt(
                &e11,
                &[
                    (vec![vec![0], vec![1]], rat(1, 2)),
                    (vec![vec![1], vec![0]], rat(-1, 2))
                ]
            )
        );
        assert!(matches!(
            coproduct(&f, 0, (2, 1)),
            Err(MultilinearError::SplitExceedsPower { .. })
        ));
    }

    #[test]
    fn euler_on_monomial() {
        let u = Space::new("U", 2);
        let s3 = GradedPiece::single(Factor::sym(&u, 3));
        let f = elt(&s3, &[(vec![vec![0, 1, 1]], int(1))]);
        let back = multiply(&coproduct(&f, 0, (1, 2)).unwrap(), 0, 1).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn derive_examples() {
        let u = Space::new("U", 3);
        let s2 = GradedPiece::single(Factor::sym(&u, 2));
        let f = elt(&s2, &[(vec![vec![0, 0]], int(1))]);
        let s1 = GradedPiece::single(Factor::sym(&u, 1));
        assert_eq!(derive(&[0], 0, &f).unwrap(), elt(&s1, &[(vec![vec![0]], int(2))]));

        let l2 = GradedPiece::single(Factor::ext(&u, 2));
        let l1 = GradedPiece::single(Factor::ext(&u, 1));
        let f = elt(&l2, &[(vec![vec![0, 1]], int(1))]);
        assert_eq!(derive(&[0], 0, &f).unwrap(), elt(&l1, &[(vec![vec![1]], int(1))]));
        assert_eq!(derive(&[1], 0, &f).unwrap(), elt(&l1, &[(vec![vec![0]], int(-1))]));

        let l3 = GradedPiece::single(Factor::ext(&u, 3));
        let g = elt(&l3, &[(vec![vec![0, 1, 2]], int(1))]);
        let direct = derive(&[0, 1], 0, &g).unwrap();
        let composed = derive(&[1], 0, &derive(&[0], 0, &g).unwrap()).unwrap();
        assert_eq!(direct, composed);
        assert_eq!(direct, elt(&l1, &[(vec![vec![2]], int(1))]));
    }

    #[test]
    fn delta_lowest_case() {
        let u = Space::new("U", 2);
        let p = GradedPiece::new(vec![Factor::ext(&u, 1), Factor::sym(&u, 0)]);
        let f = elt(&p, &[(vec![vec![0], vec![]], int(1))]);
        let q = GradedPiece::new(vec![Factor::ext(&u, 0), Factor::sym(&u, 1)]);
        assert_eq!(
            koszul_delta(&f, 0, 1).unwrap(),
            elt(&q, &[(vec![vec![], vec![0]], int(1))])
        );
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_words(&[1], &[0]), Some((int(-1), vec![0, 1])));
        assert_eq!(wedge_words(&[0, 2], &[1]), Some((int(-1), vec![0, 1, 2])));
        assert_eq!(wedge_words(&[0], &[0]), None);
    }
}
