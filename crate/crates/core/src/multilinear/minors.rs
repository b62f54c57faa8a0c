//! Determinant-type maps from products of powers of `U` and `W` into powers of `U ⊗ W`.

use super::{Factor, GradedElement, GradedPiece, Kind, Label, MultilinearError, Word};
use crate::combinatorics::{signed_permutations, sort_sign};
use crate::linalg::Rational;

/// Sends factor `i` (over `U`) and factor `j` (over `W`), both of power `m`, to one factor
/// of power `m` over `U ⊗ W`, placed at position `i`:
///
/// `s ⊗ t ↦ Σ_σ ε(σ) x_{s_σ(0), t_0} ⋆ … ⋆ x_{s_σ(m-1), t_(m-1)}`
///
/// where `ε` is the sign if factor `i` is exterior and 1 otherwise, and `⋆` is the product
/// of the target: symmetric when both kinds agree, exterior when they differ. The four
/// kind combinations give `det` (Λ, Λ), `edet` (S, Λ), its transpose (Λ, S) and the
/// permanent (S, S).
pub fn pair_map(f: &GradedElement, i: usize, j: usize) -> Result<GradedElement, MultilinearError> {
    let piece = f.piece();
    for k in [i, j] {
        if k >= piece.len() {
            return Err(MultilinearError::FactorOutOfRange {
                index: k,
                len: piece.len(),
            });
        }
    }
    if i == j {
        return Err(MultilinearError::KindMismatch("pairing a factor with itself".into()));
    }
    let (fu, fw) = (piece.factor(i), piece.factor(j));
    if fu.power != fw.power {
        return Err(MultilinearError::GradingMismatch {
            expected: format!("equal powers, {fu}"),
            got: fw.to_string(),
        });
    }
    let m = fu.power;
    let nw = fw.space.dim();
    let target_kind = if fu.kind == fw.kind { Kind::Sym } else { Kind::Ext };
    let signed = fu.kind == Kind::Ext;
    let product = Factor::new(&fu.space.tensor(&fw.space), m, target_kind);
    let mut factors = piece.factors().to_vec();
    factors[i] = product;
    factors.remove(j);
    let target = GradedPiece::new(factors);
    let perms = signed_permutations(m);
    Ok(f.map_terms(&target, |label, out| {
        for (c, w) in pair_words(&label[i], &label[j], nw, &perms, signed, target_kind) {
            let mut next: Label = label.clone();
            next[i] = w;
            next.remove(j);
            out.push((next, c));
        }
    }))
}

pub(crate) fn pair_words(
    s: &[usize],
    t: &[usize],
    nw: usize,
    perms: &[(Vec<usize>, i32)],
    signed: bool,
    target_kind: Kind,
) -> Vec<(Rational, Word)> {
    let mut acc: Vec<(Word, i64)> = Vec::new();
    for (sigma, sgn) in perms {
        let mut letters: Vec<usize> = sigma.iter().zip(t).map(|(&k, &tk)| s[k] * nw + tk).collect();
        let mut sign = if signed { *sgn as i64 } else { 1 };
        match target_kind {
            Kind::Sym => letters.sort_unstable(),
            Kind::Ext => match sort_sign(&mut letters) {
                Some(e) => sign *= e as i64,
                None => continue,
            },
        }
        acc.push((letters, sign));
    }
    acc.sort();
    let mut out: Vec<(Rational, Word)> = Vec::new();
    for (w, c) in acc {
        match out.last_mut() {
            Some((v, last)) if *last == w => *v += Rational::from_integer(c.into()),
            _ => out.push((Rational::from_integer(c.into()), w)),
        }
    }
    out.retain(|(c, _)| *c != Rational::default());
    out
}

fn check_kinds(f: &GradedElement, kinds: [Kind; 2], name: &str) -> Result<(), MultilinearError> {
    let piece = f.piece();
    if piece.len() != 2 || piece.factor(0).kind != kinds[0] || piece.factor(1).kind != kinds[1] {
        return Err(MultilinearError::KindMismatch(format!(
            "{name} expects two factors of kinds {kinds:?}, got {piece}"
        )));
    }
    Ok(())
}

/// `det: Λ^(q+1)U ⊗ Λ^(q+1)W → S^(q+1)(U⊗W)`.
pub fn det_map(f: &GradedElement) -> Result<GradedElement, MultilinearError> {
    check_kinds(f, [Kind::Ext, Kind::Ext], "det")?;
    pair_map(f, 0, 1)
}

/// `edet: S^(q+1)U ⊗ Λ^(q+1)W → Λ^(q+1)(U⊗W)`.
pub fn edet_map(f: &GradedElement) -> Result<GradedElement, MultilinearError> {
    check_kinds(f, [Kind::Sym, Kind::Ext], "edet")?;
    pair_map(f, 0, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use crate::multilinear::Space;

    fn two(u: &Space, w: &Space, ku: Kind, kw: Kind, m: usize, s: Word, t: Word) -> GradedElement {
        let p = GradedPiece::new(vec![Factor::new(u, m, ku), Factor::new(w, m, kw)]);
        GradedElement::monomial(&p, vec![s, t]).unwrap()
    }

    #[test]
    fn small_determinants() {
        let u = Space::new("U", 2);
        let w = Space::new("W", 2);
        let uw = u.tensor(&w);
        let d = det_map(&two(&u, &w, Kind::Ext, Kind::Ext, 1, vec![0], vec![0])).unwrap();
        let s1 = GradedPiece::single(Factor::sym(&uw, 1));
        assert_eq!(d, GradedElement::monomial(&s1, vec![vec![0]]).unwrap());

        let d = det_map(&two(&u, &w, Kind::Ext, Kind::Ext, 2, vec![0, 1], vec![0, 1])).unwrap();
        // x00 x11 - x10 x01 with x_ij = 2i + j
        let s2 = GradedPiece::single(Factor::sym(&uw, 2));
        let expect = GradedElement::from_terms(&s2, [(vec![vec![0, 3]], int(1)), (vec![vec![1, 2]], int(-1))]).unwrap();
        assert_eq!(d, expect);
    }

    #[test]
    fn exterior_minors() {
        let u1 = Space::new("U", 1);
        let u = Space::new("U", 2);
        let w = Space::new("W", 2);
        let e = edet_map(&two(&u1, &w, Kind::Sym, Kind::Ext, 2, vec![0, 0], vec![0, 1])).unwrap();
        let l2 = GradedPiece::single(Factor::ext(&u1.tensor(&w), 2));
        assert_eq!(e, GradedElement::from_terms(&l2, [(vec![vec![0, 1]], int(2))]).unwrap());

        let e = edet_map(&two(&u, &w, Kind::Sym, Kind::Ext, 2, vec![0, 1], vec![0, 1])).unwrap();
        let l2 = GradedPiece::single(Factor::ext(&u.tensor(&w), 2));
        // x00∧x11 + x10∧x01 = x0∧x3 - x1∧x2
        let expect = GradedElement::from_terms(&l2, [(vec![vec![0, 3]], int(1)), (vec![vec![1, 2]], int(-1))]).unwrap();
        assert_eq!(e, expect);
    }

    #[test]
    fn three_by_three_determinant_has_six_terms() {
        let u = Space::new("U", 3);
        let w = Space::new("W", 3);
        let d = det_map(&two(&u, &w, Kind::Ext, Kind::Ext, 3, vec![0, 1, 2], vec![0, 1, 2])).unwrap();
        assert_eq!(d.nnz(), 6);
    }
}
