use osculant_core::geometry::{ideal_bottom_component, sampled_ideal_component, IdealOptions, Method};
use osculant_core::schur::bottom_syzygy_dims_segre;
use osculant_core::syzygy::{koszul_cohomology_dim, GradedIdealSlice, KoszulSpot};
use osculant_core::{JetVariety, Kind, PolynomialParametrization, Space};

fn row(dims: &[usize], p_max: usize, seed: u64) -> Vec<usize> {
    let x = PolynomialParametrization::segre(dims);
    let opts = IdealOptions {
        seed,
        ..IdealOptions::default()
    };
    let i2 = ideal_bottom_component(&x, 1, 1, Method::Jets, &opts).unwrap();
    let i3 = sampled_ideal_component(&x, 3, 1, 1, &opts).unwrap();
    let slice = GradedIdealSlice::new(&Space::new("V", x.ambient_dim()), Kind::Sym, x.weights())
        .with_component(&i2)
        .unwrap()
        .with_component(&i3)
        .unwrap();
    (0..=p_max)
        .map(|p| koszul_cohomology_dim(&slice, KoszulSpot::new(p, 2, Kind::Sym)).unwrap())
        .collect()
}

fn predicted(dims: &[usize], p_max: usize) -> Vec<usize> {
    (0..=p_max)
        .map(|p| bottom_syzygy_dims_segre(p, 1, dims).total as usize)
        .collect()
}

#[test]
fn three_cube_tangent_has_no_quadrics() {
    // the tangential variety of (P^1)^3 is the hyperdeterminant quartic
    assert_eq!(row(&[2, 2, 2], 1, 7), vec![0, 0]);
}

#[test]
fn small_row_is_seed_independent() {
    let rows: Vec<_> = [3, 11, 2024].iter().map(|&s| row(&[2, 2, 2, 2], 1, s)).collect();
    assert!(rows.iter().all(|r| r == &vec![1, 0]));
}

#[test]
fn four_factor_rows() {
    assert_eq!(row(&[2, 2, 2, 2], 1, 1), vec![1, 0]);
    assert_eq!(row(&[3, 3, 3, 2], 2, 1), predicted(&[3, 3, 3, 2], 2));
}
