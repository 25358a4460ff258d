mod common;

use common::{default_grid, pair, torus};
use msm_lab::gauge::{
    compute_a, compute_a0, compute_a0_diagonal, curvature_check, divergence_check, gauge_bound_sample, riesz,
    survey_gauge_bounds, VectorPotential,
};
use msm_lab::littlewood_paley::DyadicPartition;
use msm_lab::{Axis, ComplexField, FieldPair, C64};
use proptest::prelude::*;

fn sine_pair(sign: f64) -> FieldPair {
    let grid = torus(16);
    FieldPair::new(
        ComplexField::constant(grid, C64::new(1.0, 0.0)),
        ComplexField::from_fn(grid, move |_, x2| C64::new(0.0, sign * x2.sin())),
    )
}

fn pot_diff(a: &VectorPotential, b: &VectorPotential) -> f64 {
    a.a1.max_abs_diff(&b.a1).max(a.a2.max_abs_diff(&b.a2))
}

#[test]
fn sine_example_closed_form() {
    // u₂ = −i sin x₂ gives Im(u₁ū₂) = sin x₂, so −ΔA₁ = −4∂₂ sin x₂ and A₁ = 4 cos x₂
    let u = sine_pair(-1.0);
    let a = compute_a(&u, &u);
    let grid = u.grid();
    let expected = ComplexField::from_real_fn(grid, |_, x2| 4.0 * x2.cos());
    assert!(a.a1.max_abs_diff(&expected) < 1e-13);
    assert!(a.a2.max_abs() < 1e-14);
    assert!(divergence_check(&a) < 1e-14);
    assert!(curvature_check(&u, &a).unwrap() < 1e-13);

    let flipped = sine_pair(1.0);
    let b = compute_a(&flipped, &flipped);
    assert!(b.a1.max_abs_diff(&expected.scale_real(-1.0)) < 1e-13);
    assert!(curvature_check(&flipped, &b).unwrap() < 1e-13);
}

#[test]
fn zero_and_single_component_inputs() {
    let grid = torus(16);
    let zero = FieldPair::zeros(grid);
    assert!(compute_a(&zero, &zero).max_abs() == 0.0);
    assert!(compute_a0(&zero, &zero).max_abs() == 0.0);
    assert_eq!(divergence_check(&compute_a(&zero, &zero)), 0.0);
    assert_eq!(curvature_check(&zero, &compute_a(&zero, &zero)).unwrap(), 0.0);

    let u = pair(default_grid(32), 1.0, 8.0, 4, 0);
    let only_first = FieldPair::new(u.first.clone(), ComplexField::zeros(u.grid()));
    assert!(compute_a(&only_first, &only_first).max_abs() == 0.0);

    let one = FieldPair::new(ComplexField::constant(grid, C64::new(1.0, 0.0)), ComplexField::zeros(grid));
    assert!(compute_a0(&one, &one).max_abs_diff(&ComplexField::constant(grid, C64::new(2.0, 0.0))) < 1e-14);
}

#[test]
fn riesz_of_function_of_first_coordinate() {
    let grid = torus(32);
    let f = ComplexField::from_real_fn(grid, |x1, _| x1.sin() + (3.0 * x1).cos());
    assert!(riesz(&f, Axis::X2).max_abs() < 1e-15);
}

#[test]
fn sine_pair_bounds_are_finite() {
    let u = sine_pair(-1.0);
    let partition = DyadicPartition::new(u.grid());
    let s = gauge_bound_sample(&partition, 6.0, &u, &u, &u.second);
    for (lhs, rhs) in [s.gradient, s.besov, s.transport] {
        assert!(lhs.is_finite() && rhs > 0.0 && lhs >= 0.0);
    }
    // ∇A = (−4 sin x₂) in the ∂₂A₁ slot only
    assert!((s.gradient.0 - 4.0).abs() < 1e-12);
}

#[test]
fn zero_survey_and_empty_survey() {
    let grid = torus(16);
    let partition = DyadicPartition::new(grid);
    let zero = FieldPair::zeros(grid);
    let samples = vec![(zero.clone(), zero.clone(), ComplexField::zeros(grid)); 50];
    for r in survey_gauge_bounds(&partition, 6.0, &samples, 0).unwrap() {
        assert_eq!(r.max_ratio, 0.0);
    }
    assert!(survey_gauge_bounds(&partition, 6.0, &[], 0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn polarization_and_symmetry(seed in any::<u64>()) {
        let grid = default_grid(32);
        let (u, v) = (pair(grid, 1.0, 10.0, seed, 0), pair(grid, 1.0, 10.0, seed, 1));
        let (auu, avv, auv, avu) = (compute_a(&u, &u), compute_a(&v, &v), compute_a(&u, &v), compute_a(&v, &u));
        let s = u.add(&v);
        let whole = compute_a(&s, &s);
        let expanded = auu.add(&auv.scale(2.0)).add(&avv);
        let scale = whole.max_abs();
        prop_assert!(pot_diff(&whole, &expanded) < 1e-11 * scale);
        prop_assert!(pot_diff(&auv, &avu) < 1e-14 * scale);
        for a in [&auu, &auv] {
            prop_assert!(a.max_abs_im() < 1e-12 * a.max_abs());
            let [m1, m2] = a.mean();
            prop_assert!(m1.norm() < 1e-14 * scale && m2.norm() < 1e-14 * scale);
        }
        let a0 = compute_a0(&u, &v);
        prop_assert!(a0.max_abs_im() < 1e-12 * a0.max_abs());
    }

    #[test]
    fn a0_forms_agree(seed in any::<u64>()) {
        let u = pair(default_grid(32), 1.0, 10.0, seed, 2);
        let general = compute_a0(&u, &u);
        let diagonal = compute_a0_diagonal(&u);
        prop_assert!(general.max_abs_diff(&diagonal) < 1e-11 * general.max_abs());
    }

    #[test]
    fn coulomb_and_curvature(seed in any::<u64>()) {
        let u = pair(default_grid(64), 1.0, 16.0, seed, 3);
        let a = compute_a(&u, &u);
        prop_assert!(divergence_check(&a) < 1e-11);
        prop_assert!(curvature_check(&u, &a).unwrap() < 1e-8);
    }
}
