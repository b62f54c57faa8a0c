use super::{box_product, BoxKind, SyzygyError};
use crate::geometry::LinearTensor;
use crate::multilinear::{apply_linear, Factor, GradedElement, GradedPiece, Kind, Space};

/// Pushes a syzygy on `V_1 ⊗ … ⊗ V_ℓ` forward along `T` by applying the induced maps on
/// both factors.
pub fn pushforward_syzygy(t: &LinearTensor, cycle: &GradedElement) -> Result<GradedElement, SyzygyError> {
    let domain: usize = t.sources().iter().product();
    for f in cycle.piece().factors() {
        if f.space.dim() != domain {
            return Err(SyzygyError::Mismatch(format!(
                "syzygy over {} does not match a tensor with domain of dimension {domain}",
                f.space
            )));
        }
    }
    let target = t.target_space();
    let image = |i: usize| t.image(i).clone();
    let mut g = cycle.clone();
    for index in 0..g.piece().len() {
        g = apply_linear(&g, index, &target, &image);
    }
    Ok(g)
}

/// `u_0^a ⊗ u_0 ∧ … ∧ u_(c-1)` in `S^a U ⊗ Λ^c U`, zero when `c > dim U`. A Koszul cycle
/// whenever `c = dim U`.
pub fn standard_cycle(space: &Space, a: usize, c: usize) -> GradedElement {
    let piece = GradedPiece::new(vec![Factor::sym(space, a), Factor::ext(space, c)]);
    if c > space.dim() || space.dim() == 0 && a > 0 {
        return GradedElement::zero(&piece);
    }
    GradedElement::monomial(&piece, vec![vec![0; a], (0..c).collect()]).expect("valid label")
}

/// The bottom syzygy attached to a splitting `p = p_1 + … + p_ℓ` of the homological
/// degree: starting from a standard cycle of `V_1`, each further factor `V_i` is joined by
/// a box product with the standard cycle `w_0^(p_i) ⊗ w_0 ∧ … ∧ w_(A+q)`, alternating
/// between the symmetric and exterior products. The result lies in
/// `Λ^p(V_1⊗…⊗V_ℓ) ⊗ S^(q+1)` for even `ℓ` and `S^p ⊗ Λ^(q+1)` for odd `ℓ`.
///
/// Nonzero exactly when every `dim V_i ≥ p - p_i + q + 1`.
pub fn nonvanishing_witness(spaces: &[Space], splitting: &[usize], q: usize) -> Result<GradedElement, SyzygyError> {
    if spaces.is_empty() || spaces.len() != splitting.len() {
        return Err(SyzygyError::Mismatch(format!(
            "{} spaces for a splitting of length {}",
            spaces.len(),
            splitting.len()
        )));
    }
    let total: usize = splitting.iter().sum();
    build(spaces, splitting, spaces.len(), total, q)
}

fn build(
    spaces: &[Space],
    splitting: &[usize],
    level: usize,
    p: usize,
    q: usize,
) -> Result<GradedElement, SyzygyError> {
    if level == 1 {
        return Ok(standard_cycle(&spaces[0], p, q + 1));
    }
    let b = splitting[level - 1];
    let a = p - b;
    let f = build(spaces, splitting, level - 1, a, q + b)?;
    let g = standard_cycle(&spaces[level - 1], b, a + q + 1);
    let kind = if level.is_multiple_of(2) {
        BoxKind::Sym
    } else {
        BoxKind::Ext
    };
    if f.is_zero() || g.is_zero() {
        let uw = f.piece().factor(0).space.tensor(&spaces[level - 1]);
        let (first, second) = match kind {
            BoxKind::Sym => (Kind::Ext, Kind::Sym),
            BoxKind::Ext => (Kind::Sym, Kind::Ext),
        };
        let piece = GradedPiece::new(vec![Factor::new(&uw, p, first), Factor::new(&uw, q + 1, second)]);
        return Ok(GradedElement::zero(&piece));
    }
    box_product(&f, &g, kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilinear::koszul_delta;

    #[test]
    fn witnesses_vanish_as_predicted() {
        let spaces = vec![Space::new("V1", 2), Space::new("V2", 3)];
        let s = nonvanishing_witness(&spaces, &[1, 0], 1).unwrap();
        assert!(!s.is_zero());
        assert!(koszul_delta(&s, 0, 1).unwrap().is_zero());
        // dim V1 = 2 < p - p_1 + q + 1 = 3
        assert!(nonvanishing_witness(&spaces, &[0, 1], 1).unwrap().is_zero());
    }

    #[test]
    fn pushforward_along_a_product() {
        let t = LinearTensor::rnc_multiplication(&[1, 1]);
        let spaces = t.source_spaces();
        let s = nonvanishing_witness(&spaces, &[0, 0], 0).unwrap();
        let image = pushforward_syzygy(&t, &s).unwrap();
        assert_eq!(image.piece().factor(0).space.dim(), 3);
        assert!(!image.is_zero());
    }
}
