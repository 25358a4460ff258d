mod common;

use common::{field, narrow_field, rel, torus};
use msm_lab::spectral::{
    coefficient_l2_norm, derivative, forward_transform, inverse_transform, lp_norm, pointwise_product,
    sobolev_norm,
};
use msm_lab::{Axis, ComplexField, FourierMultiplier, C64};
use proptest::prelude::*;

#[test]
fn constant_and_pure_mode_coefficients() {
    let grid = torus(16);
    let c = forward_transform(&ComplexField::constant(grid, C64::new(1.0, 0.0)));
    assert!((c[0] - C64::new(1.0, 0.0)).norm() < 1e-15);
    assert!(c[1..].iter().all(|x| x.norm() < 1e-15));

    let wave = ComplexField::from_fn(grid, |x1, _| C64::from_polar(1.0, x1));
    let c = forward_transform(&wave);
    let k = grid.mode_index(1, 0).unwrap();
    for (i, x) in c.iter().enumerate() {
        let expected = if i == k { 1.0 } else { 0.0 };
        assert!((x - expected).norm() < 1e-14, "mode {i}: {x}");
    }
}

#[test]
fn riesz_multiplier_on_single_mode() {
    let grid = torus(16);
    let wave = ComplexField::plane_wave(grid, 1, 0);
    let out = FourierMultiplier::riesz(grid, Axis::X1).apply(&wave);
    assert!(out.max_abs_diff(&wave.scale(C64::i())) < 1e-14);
    assert!(FourierMultiplier::riesz(grid, Axis::X2).apply(&ComplexField::zeros(grid)).is_zero());
}

#[test]
fn derivative_examples() {
    let grid = torus(16);
    let wave = ComplexField::plane_wave(grid, 1, 0);
    assert!(derivative(&wave, Axis::X1).max_abs_diff(&wave.scale(C64::i())) < 1e-14);
    assert!(derivative(&ComplexField::constant(grid, C64::new(2.0, 1.0)), Axis::X2).max_abs() < 1e-15);
    let sine = ComplexField::from_real_fn(grid, |_, x2| x2.sin());
    assert!(derivative(&sine, Axis::X1).max_abs() < 1e-15);
}

#[test]
fn product_examples() {
    let grid = torus(16);
    let f = field(grid, 3);
    let one = ComplexField::constant(grid, C64::new(1.0, 0.0));
    assert!(pointwise_product(&f, &one).max_abs_diff(&f) < 1e-13 * f.max_abs());
    assert!(pointwise_product(&f, &ComplexField::zeros(grid)).max_abs() == 0.0);
    let wave = ComplexField::plane_wave(grid, 1, 0);
    let square = pointwise_product(&wave, &wave);
    assert!(square.max_abs_diff(&ComplexField::plane_wave(grid, 2, 0)) < 1e-14);
}

#[test]
fn sobolev_norm_examples() {
    let grid = torus(16);
    let one = ComplexField::constant(grid, C64::new(1.0, 0.0));
    let wave = ComplexField::plane_wave(grid, 1, 0);
    for s in [-2.0, -0.5, 0.0, 1.0, 2.0] {
        assert!((sobolev_norm(&one, s) - 1.0).abs() < 1e-14);
        assert!((sobolev_norm(&wave, s) - 2f64.powf(s / 2.0)).abs() < 1e-14);
        assert_eq!(sobolev_norm(&ComplexField::zeros(grid), s), 0.0);
    }
    assert!((sobolev_norm(&wave, -0.5) - 2f64.powf(-0.25)).abs() < 1e-14);
}

#[test]
fn lp_norm_examples() {
    let grid = torus(16);
    let unimodular = ComplexField::from_fn(grid, |x1, x2| C64::from_polar(1.0, x1.sin() + 3.0 * x2));
    for p in [1.0, 2.0, 3.5, 4.0, f64::INFINITY] {
        assert!((lp_norm(&unimodular, p) - 1.0).abs() < 1e-14, "p = {p}");
    }
    assert!((lp_norm(&ComplexField::plane_wave(grid, 1, 0), 2.0) - 1.0).abs() < 1e-14);

    // |1 + εg|⁴ averages to 1 + 4ε⟨Re g⟩ + O(ε²); g has zero mean so the L⁴ norm is 1 + O(ε²).
    let g = field(grid, 9);
    let g = g.scale_real(1.0 / g.max_abs()).map(|z| z - g.mean() / g.max_abs());
    let mut previous = f64::INFINITY;
    for eps in [1e-2, 1e-3, 1e-4] {
        let perturbed = g.scale_real(eps).map(|z| z + 1.0);
        let deviation = (lp_norm(&perturbed, 4.0) - 1.0).abs();
        assert!(deviation < 10.0 * eps * eps, "eps {eps}: {deviation}");
        assert!(deviation < previous);
        previous = deviation;
    }
}

#[test]
fn multiplier_identities() {
    let grid = torus(32);
    let f = field(grid, 4);
    let id = FourierMultiplier::identity(grid).apply(&f);
    assert!(id.max_abs_diff(&f) < 1e-13 * f.max_abs());

    // R₁² + R₂² = −(f − mean f)
    let r1 = FourierMultiplier::riesz(grid, Axis::X1);
    let r2 = FourierMultiplier::riesz(grid, Axis::X2);
    let sum = r1.apply(&r1.apply(&f)).add(&r2.apply(&r2.apply(&f)));
    let mean = f.mean();
    let expected = f.map(|z| mean - z);
    // the symbols vanish where the Nyquist-zeroed wavevector does
    let expected = expected.map_spectrum(|i, c| if grid.mode(i).odd_norm_sqr() == 0.0 { C64::new(0.0, 0.0) } else { c });
    assert!(sum.max_abs_diff(&expected) < 1e-13 * f.max_abs());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn transform_roundtrip(seed in any::<u64>()) {
        let grid = torus(32);
        let f = field(grid, seed);
        let back = inverse_transform(grid, forward_transform(&f)).unwrap();
        prop_assert!(back.max_abs_diff(&f) < 1e-12 * f.max_abs());
    }

    #[test]
    fn parseval(seed in any::<u64>()) {
        let f = field(torus(32), seed);
        let l2 = lp_norm(&f, 2.0);
        prop_assert!((l2 - coefficient_l2_norm(&f)).abs() < 1e-12 * l2);
        prop_assert!((l2 - sobolev_norm(&f, 0.0)).abs() < 1e-12 * l2);
    }

    #[test]
    fn sobolev_norm_is_monotone(seed in any::<u64>(), s in -2.0f64..1.9) {
        let f = field(torus(16), seed);
        prop_assert!(sobolev_norm(&f, s) <= sobolev_norm(&f, s + 0.1) * (1.0 + 1e-14));
    }

    #[test]
    fn derivative_is_a_derivation(seed in any::<u64>()) {
        let grid = torus(32);
        let (f, g) = (narrow_field(grid, seed), narrow_field(grid, seed ^ 0x5555));
        for axis in Axis::BOTH {
            let lhs = derivative(&pointwise_product(&f, &g), axis);
            let rhs = pointwise_product(&derivative(&f, axis), &g).add(&pointwise_product(&f, &derivative(&g, axis)));
            prop_assert!(rel(lhs.max_abs_diff(&rhs), lhs.max_abs()) < 1e-10);
        }
    }

    #[test]
    fn multipliers_commute(seed in any::<u64>()) {
        let grid = torus(16);
        let f = field(grid, seed);
        let a = FourierMultiplier::riesz(grid, Axis::X1);
        let b = FourierMultiplier::bessel(grid, -0.7);
        let ab = b.apply(&a.apply(&f));
        let ba = a.apply(&b.apply(&f));
        prop_assert!(ab.max_abs_diff(&ba) < 1e-14 * f.max_abs());
    }
}
