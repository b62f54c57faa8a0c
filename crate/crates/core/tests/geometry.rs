use num_traits::Zero;
use osculant_core::geometry::{
    b_map, dim_estimate, evaluate_form, ideal_bottom_component, sample_secant_osculating_point, IdealOptions,
    LinearTensor, Method, Provenance, VarietySpec,
};
use osculant_core::linalg::{int, vectors_rank, SparseVec};
use osculant_core::{JetVariety, PolynomialParametrization};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_varieties() -> Vec<PolynomialParametrization> {
    vec![
        PolynomialParametrization::rational_normal_curve(4),
        PolynomialParametrization::rational_normal_curve(6),
        PolynomialParametrization::segre(&[2, 3]),
        PolynomialParametrization::segre(&[2, 2, 2]),
        PolynomialParametrization::segre_veronese(&[2, 2], &[1, 2]),
        PolynomialParametrization::pencil_product(2, 2),
    ]
}

#[test]
fn jets_and_sampling_agree() {
    let opts = IdealOptions {
        seed: 5,
        ..IdealOptions::default()
    };
    for x in small_varieties() {
        for (q, k) in [(1, 0), (1, 1), (2, 0)] {
            let jets = ideal_bottom_component(&x, q, k, Method::Jets, &opts).unwrap();
            let sampled = ideal_bottom_component(&x, q, k, Method::Sampling, &opts).unwrap();
            assert_eq!(jets.basis, sampled.basis, "{} q={q} k={k}", x.name());
            assert_eq!(jets.provenance, Provenance::Exact);
            assert_eq!(sampled.provenance, Provenance::Sampled);
        }
    }
}

#[test]
fn multiplication_map_lands_in_the_ideal() {
    // ν_d with T the multiplication of binary forms of degrees d_1, …, d_ℓ summing to d;
    // osculation order k needs ℓ ≥ 2(k+1)
    let opts = IdealOptions::default();
    for (degrees, q, k) in [
        (vec![2, 2], 1, 0),
        (vec![2, 2, 2, 2], 1, 1),
        (vec![3, 3], 2, 0),
        (vec![4, 4], 1, 0),
        (vec![1; 6], 1, 2),
    ] {
        let d: usize = degrees.iter().sum();
        let x = PolynomialParametrization::rational_normal_curve(d);
        let t = LinearTensor::rnc_multiplication(&degrees);
        let ideal = ideal_bottom_component(&x, q, k, Method::Jets, &opts).unwrap();
        let m = b_map(&t, q).transpose();
        let image: Vec<SparseVec> = (0..m.nrows()).map(|r| m.row_vec(r)).collect();
        let mut all = ideal.basis.clone();
        all.extend(image.iter().cloned());
        assert_eq!(vectors_rank(&all), ideal.dim(), "{degrees:?} q={q} k={k}");
        assert!(vectors_rank(&image) > 0);
    }
}

#[test]
fn tangent_varieties_double_the_dimension() {
    for x in small_varieties() {
        let n = x.intrinsic_dim();
        let expected = (2 * n).min(x.ambient_dim() - 1);
        assert_eq!(dim_estimate(&x, 1, 1, 3, 9).unwrap(), expected, "{}", x.name());
        assert_eq!(dim_estimate(&x, 1, 0, 1, 9).unwrap(), n, "{}", x.name());
    }
}

#[test]
fn secants_of_curves_have_expected_dimension() {
    for d in 3..=8 {
        let x = PolynomialParametrization::rational_normal_curve(d);
        for q in 1..=3 {
            assert_eq!(dim_estimate(&x, q, 0, 2, 3).unwrap(), (2 * q - 1).min(d), "d={d} q={q}");
        }
    }
}

#[test]
fn variety_descriptors_round_trip() {
    for spec in [
        VarietySpec::Rnc { d: 5 },
        VarietySpec::Segre { dims: vec![2, 3, 4] },
        VarietySpec::SegreVeronese {
            dims: vec![2, 3],
            degrees: vec![2, 1],
        },
        VarietySpec::PencilProduct { a: 2, b: 3 },
    ] {
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(VarietySpec::from_json(&text).unwrap(), spec);
    }
    assert!(VarietySpec::from_json(r#"{"kind":"segre","params":{"dims":[]}}"#).is_err());
    assert!(VarietySpec::from_json(r#"{"kind":"torus","params":{}}"#).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn equations_vanish_on_sampled_points(d in 3usize..=7, q in 1usize..=2, k in 0usize..=1, seed in any::<u64>()) {
        let x = PolynomialParametrization::rational_normal_curve(d);
        let ideal = ideal_bottom_component(&x, q, k, Method::Jets, &IdealOptions::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let factor = ideal.factor();
        for _ in 0..3 {
            let z = sample_secant_osculating_point(&x, q, k, &mut rng).unwrap();
            for f in &ideal.basis {
                prop_assert!(evaluate_form(&factor, f, &z).is_zero());
            }
        }
    }

    #[test]
    fn tensor_json_round_trip(sources in proptest::collection::vec(1usize..=3, 1..=3), target in 1usize..=4, entries in proptest::collection::vec(-5i64..=5, 1..=50)) {
        let total: usize = sources.iter().product();
        let mut values = entries.iter().cycle();
        let images: Vec<(Vec<usize>, SparseVec)> = (0..total)
            .map(|f| {
                let mut index = Vec::new();
                let mut rest = f;
                for &n in sources.iter().rev() {
                    index.push(rest % n);
                    rest /= n;
                }
                index.reverse();
                let v = SparseVec::from_pairs((0..target).map(|i| (i, int(*values.next().unwrap()))));
                (index, v)
            })
            .collect();
        let t = LinearTensor::new(sources, target, images).unwrap();
        prop_assert_eq!(LinearTensor::from_json(&t.to_json()).unwrap(), t);
    }
}
