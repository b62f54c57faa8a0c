use std::collections::BTreeMap;

use serde::Serialize;

use super::SyzygyError;
use crate::linalg::{solve, Rational, SparseVec};
use crate::multilinear::{
    coproduct, koszul_delta, multiply, pair_map, tensor, Factor, GradedElement, GradedPiece, Kind,
};

/// Which box product: `Sym` builds syzygies of determinantal ideals in
/// `Λ^p(U⊗W) ⊗ S^(q+1)(U⊗W)`, `Ext` builds syzygies of exterior minors in
/// `S^p(U⊗W) ⊗ Λ^(q+1)(U⊗W)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoxKind {
    Sym,
    Ext,
}

impl BoxKind {
    fn first_kind(self) -> Kind {
        match self {
            BoxKind::Sym => Kind::Sym,
            BoxKind::Ext => Kind::Ext,
        }
    }
}

fn shape(f: &GradedElement, first: Kind, what: &str) -> Result<(usize, usize), SyzygyError> {
    let piece = f.piece();
    if piece.len() != 2 || piece.factor(0).kind != first || piece.factor(1).kind == first {
        return Err(SyzygyError::Mismatch(format!("{what} lives in {piece}")));
    }
    if piece.factor(0).space != piece.factor(1).space {
        return Err(SyzygyError::Mismatch(format!("{what} mixes spaces in {piece}")));
    }
    Ok((piece.factor(0).power, piece.factor(1).power))
}

fn check_cycle(f: &GradedElement, what: &str) -> Result<(), SyzygyError> {
    if koszul_delta(f, 0, 1)?.is_zero() {
        Ok(())
    } else {
        Err(SyzygyError::NotACycle(what.into()))
    }
}

/// `f ⊠^0 G` (kind `Sym`) or `f ⊠_0 G` (kind `Ext`), before the final differential.
///
/// `f` lies in `S^a U ⊗ Λ^(b+q+1) U` (resp. `Λ^a U ⊗ S^(b+q+1) U`) and `G` in
/// `S^(b+1) W ⊗ Λ^(a+q) W`. Both second factors are split off a degree `q` piece, the
/// remaining pieces are paired across `U` and `W` by the determinant-type maps and the
/// first two products are multiplied, landing in `Λ^(a+b+1)(U⊗W) ⊗ S^q(U⊗W)` (resp.
/// `S^(a+b+1) ⊗ Λ^q`).
pub fn box0_product(f: &GradedElement, g_pre: &GradedElement, kind: BoxKind) -> Result<GradedElement, SyzygyError> {
    let (a, top) = shape(f, kind.first_kind(), "f")?;
    let (b1, aq) = shape(g_pre, Kind::Sym, "G")?;
    if b1 == 0 || aq < a || top != b1 + aq - a {
        return Err(SyzygyError::Mismatch(format!(
            "incompatible degrees: f in {}, G in {}",
            f.piece(),
            g_pre.piece()
        )));
    }
    let q = aq - a;
    let fs = coproduct(f, 1, (b1, q))?;
    let gs = coproduct(g_pre, 1, (a, q))?;
    let mut x = tensor(&fs, &gs);
    // [P^a U, Q^(b+1) U, Q^q U, S^(b+1) W, Λ^a W, Λ^q W]
    x = pair_map(&x, 0, 4)?;
    x = pair_map(&x, 1, 3)?;
    x = pair_map(&x, 2, 3)?;
    Ok(multiply(&x, 0, 1)?)
}

/// `δ(f ⊠^0 G)`, a syzygy in `Λ^(a+b)(U⊗W) ⊗ S^(q+1)(U⊗W)` (resp. `S^(a+b) ⊗ Λ^(q+1)`).
pub fn box_product_from_preimage(
    f: &GradedElement,
    g_pre: &GradedElement,
    kind: BoxKind,
) -> Result<GradedElement, SyzygyError> {
    Ok(koszul_delta(&box0_product(f, g_pre, kind)?, 0, 1)?)
}

/// `f ⊠ g` for Koszul cycles `f` of `U` and `g ∈ Z^{b, a+q+1}(W)`: picks some `G` with
/// `δ G = g` and returns `δ(f ⊠^0 G)`. The class does not depend on the choice of `G`.
pub fn box_product(f: &GradedElement, g: &GradedElement, kind: BoxKind) -> Result<GradedElement, SyzygyError> {
    let (a, _) = shape(f, kind.first_kind(), "f")?;
    let (b, top) = shape(g, Kind::Sym, "g")?;
    if top < a + 1 {
        return Err(SyzygyError::Mismatch(format!(
            "g in {} is too small for a = {a}",
            g.piece()
        )));
    }
    check_cycle(f, "f")?;
    check_cycle(g, "g")?;
    let g_pre = preimage(g, b, top - 1)?;
    box_product_from_preimage(f, &g_pre, kind)
}

/// Solves `δ G = g` for `G ∈ S^(b+1) W ⊗ Λ^c W` within the weight block of `g`.
fn preimage(g: &GradedElement, b: usize, c: usize) -> Result<GradedElement, SyzygyError> {
    let w = &g.piece().factor(0).space;
    let source = GradedPiece::new(vec![Factor::sym(w, b + 1), Factor::ext(w, c)]);
    let weight = |label: &[Vec<usize>]| {
        let mut t = vec![0u32; w.dim()];
        for l in label.iter().flatten() {
            t[*l] += 1;
        }
        t
    };
    let mut blocks: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
    for (r, label) in source.labels().enumerate() {
        blocks.entry(weight(&label)).or_default().push(r);
    }
    let mut result = Vec::new();
    let mut by_weight: BTreeMap<Vec<u32>, Vec<(usize, Rational)>> = BTreeMap::new();
    for (label, c) in g.terms() {
        by_weight
            .entry(weight(&label))
            .or_default()
            .push((g.piece().rank(&label), c.clone()));
    }
    for (key, entries) in by_weight {
        let cols = blocks.get(&key).ok_or(SyzygyError::NoPreimage)?;
        let images: Vec<SparseVec> = cols
            .iter()
            .map(|&r| Ok(koszul_delta(&GradedElement::basis(&source, r), 0, 1)?.into_coeffs()))
            .collect::<Result<_, SyzygyError>>()?;
        let x = solve(&images, &SparseVec::from_pairs(entries)).ok_or(SyzygyError::NoPreimage)?;
        result.extend(x.into_entries().into_iter().map(|(i, c)| (cols[i], c)));
    }
    Ok(GradedElement::from_vector(&source, SparseVec::from_pairs(result)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vectors_rank;
    use crate::multilinear::Space;
    use crate::syzygy::{bottom_cycles, koszul_cycles};

    fn standard(space: &Space, a: usize, c: usize) -> GradedElement {
        let piece = GradedPiece::new(vec![Factor::sym(space, a), Factor::ext(space, c)]);
        GradedElement::monomial(&piece, vec![vec![0; a], (0..c).collect()]).unwrap()
    }

    #[test]
    fn products_are_bottom_syzygies() {
        // 2x3 matrices: I_2 has a two-dimensional space of linear syzygies
        let u = Space::new("U", 2);
        let w = Space::new("W", 3);
        let f = standard(&u, 1, 2);
        let g = standard(&w, 0, 3);
        let s = box_product(&f, &g, BoxKind::Sym).unwrap();
        assert!(!s.is_zero());
        assert!(koszul_delta(&s, 0, 1).unwrap().is_zero());
        let cycles = bottom_cycles(&u, &w, 1, 1, Kind::Sym).unwrap();
        assert_eq!(cycles.len(), 2);
        let mut all: Vec<SparseVec> = cycles.iter().map(|c| c.coeffs().clone()).collect();
        all.push(s.coeffs().clone());
        assert_eq!(vectors_rank(&all), 2);
    }

    #[test]
    fn rejects_non_cycles() {
        let u = Space::new("U", 2);
        let piece = GradedPiece::new(vec![Factor::sym(&u, 1), Factor::ext(&u, 1)]);
        let f = GradedElement::monomial(&piece, vec![vec![0], vec![1]]).unwrap();
        let g = standard(&u, 0, 2);
        assert!(matches!(
            box_product(&f, &g, BoxKind::Sym),
            Err(SyzygyError::NotACycle(_))
        ));
        assert_eq!(koszul_cycles(&u, Kind::Sym, 1, 1).unwrap().len(), 3);
    }
}
