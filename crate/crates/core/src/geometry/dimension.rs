use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::variety::multi_indices_up_to;
use super::{random_rational, GeometryError, JetVariety};
use crate::linalg::{vectors_rank, Rational, SparseVec};

/// Projective dimension of `σ_q τ^k X` estimated as the rank of the differential of
/// `(c, t_1, …, t_q) ↦ Σ_r Σ_(|α| ≤ k) c_(r,α) ∂^α φ(t_r)` at random points, minus one,
/// maximized over `trials`. The differential is spanned by the jets `∂^α φ(t_r)` and,
/// for each chart direction `j`, by `Σ_α c_(r,α) ∂^(α+e_j) φ(t_r)`. The rank is a lower
/// bound that is attained at general points.
pub fn dim_estimate<X: JetVariety + ?Sized>(
    x: &X,
    q: usize,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<usize, GeometryError> {
    let n = x.intrinsic_dim();
    let alphas = multi_indices_up_to(n, k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for _ in 0..trials.max(1) {
        let mut vectors: Vec<SparseVec> = Vec::new();
        for _ in 0..q {
            let t = x.random_point(&mut rng);
            let coeffs: Vec<Rational> = alphas.iter().map(|_| random_rational(&mut rng)).collect();
            for a in &alphas {
                vectors.push(SparseVec::from_dense(&x.jet(&t, a)?));
            }
            for j in 0..n {
                let mut acc = vec![Rational::zero(); x.ambient_dim()];
                for (a, c) in alphas.iter().zip(&coeffs) {
                    let mut shifted = a.clone();
                    shifted[j] += 1;
                    for (s, v) in acc.iter_mut().zip(x.jet(&t, &shifted)?) {
                        *s += c * v;
                    }
                }
                vectors.push(SparseVec::from_dense(&acc));
            }
        }
        best = best.max(vectors_rank(&vectors).saturating_sub(1));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PolynomialParametrization;

    #[test]
    fn curves_and_surfaces() {
        let c = PolynomialParametrization::rational_normal_curve(4);
        assert_eq!(dim_estimate(&c, 1, 1, 2, 7).unwrap(), 2);
        assert_eq!(dim_estimate(&c, 2, 0, 2, 7).unwrap(), 3);
        let s = PolynomialParametrization::pencil_product(2, 2);
        assert_eq!(dim_estimate(&s, 1, 1, 2, 7).unwrap(), 4);
        assert_eq!(dim_estimate(&s, 2, 0, 2, 7).unwrap(), 5);
        assert_eq!(dim_estimate(&s, 1, 0, 2, 7).unwrap(), 2);
    }
}
