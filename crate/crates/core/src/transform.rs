//! From a map `z` (stereographic coordinate of a sphere-valued map) to the
//! gauged fields `u_j = e^{iψ} ∂_j z / (1 + |z|²)`.
//!
//! The gauge `ψ` solves `Δψ = 2 Σ_j ∂_j Im(b̄_j z)` with `b_j = ∂_j z/(1+|z|²)`,
//! which makes the connection `A_j = −∂_j ψ + 2 Im(b̄_j z)` divergence free.
//! Everything here acts on grid samples: derivatives are spectral, the
//! nonlinear maps are pointwise.
//!
//! On the torus a constant vector potential cannot be removed by a periodic
//! gauge, so the connection built from `z` may carry a constant part that the
//! zero-mean potential `A[u,u]` does not. Comparisons between the two use the
//! mean-free parts.

use serde::Serialize;

use crate::gauge::{compute_a, curvature_check, divergence_check, VectorPotential};
use crate::spectral::{
    derivative, inverse_laplacian, lp_norm, pointwise_product, Axis, ComplexField, FieldPair, C64,
};

/// Point on the unit sphere for the stereographic coordinate `z`.
pub fn stereographic(z: C64) -> [f64; 3] {
    let r2 = z.norm_sqr();
    let d = 1.0 + r2;
    [2.0 * z.re / d, 2.0 * z.im / d, (1.0 - r2) / d]
}

/// A bounded map into the chart that excludes the north pole.
#[derive(Debug, Clone)]
pub struct ProjectedMap {
    pub z: ComplexField,
}

impl ProjectedMap {
    pub fn new(z: ComplexField) -> ProjectedMap {
        ProjectedMap { z }
    }
}

#[derive(Debug, Clone)]
pub struct GaugeFrame {
    pub b: FieldPair,
    pub psi: ComplexField,
    pub u: FieldPair,
}

/// `b_j = ∂_j z / (1 + |z|²)`.
pub fn covariant_frame(map: &ProjectedMap) -> FieldPair {
    let weight = map.z.map(|z| C64::new(1.0 / (1.0 + z.norm_sqr()), 0.0));
    let b = |axis| derivative(&map.z, axis).zip_map(&weight, |d, w| d * w);
    FieldPair::new(b(Axis::X1), b(Axis::X2))
}

/// `Im(b̄_j z)` for both axes.
fn frame_twist(map: &ProjectedMap, b: &FieldPair) -> FieldPair {
    b.map(|bj| bj.zip_map(&map.z, |b, z| C64::new((b.conj() * z).im, 0.0)))
}

/// Source `2 Σ_j ∂_j Im(b̄_j z)` of the gauge equation.
pub fn psi_source(map: &ProjectedMap) -> ComplexField {
    let b = covariant_frame(map);
    let twist = frame_twist(map, &b);
    derivative(&twist.first, Axis::X1)
        .add(&derivative(&twist.second, Axis::X2))
        .scale_real(2.0)
}

/// Gauge function `ψ` with zero mean.
pub fn solve_psi(map: &ProjectedMap) -> ComplexField {
    inverse_laplacian(&psi_source(map)).re()
}

/// Fields `u_j` and the connection computed from `ψ` and `z` directly.
pub fn derive_u(map: &ProjectedMap) -> (GaugeFrame, VectorPotential) {
    let b = covariant_frame(map);
    let twist = frame_twist(map, &b);
    let psi = inverse_laplacian(
        &derivative(&twist.first, Axis::X1)
            .add(&derivative(&twist.second, Axis::X2))
            .scale_real(2.0),
    )
    .re();
    let phase = psi.map(|p| C64::from_polar(1.0, p.re));
    let u = b.map(|bj| bj.zip_map(&phase, |b, e| b * e));
    let a = VectorPotential {
        a1: twist
            .first
            .scale_real(2.0)
            .sub(&derivative(&psi, Axis::X1))
            .re(),
        a2: twist
            .second
            .scale_real(2.0)
            .sub(&derivative(&psi, Axis::X2))
            .re(),
    };
    (GaugeFrame { b, psi, u }, a)
}

/// `D_j f = ∂_j f + i A_j f`, with a dealiased product.
pub fn covariant_derivative(a: &VectorPotential, axis: Axis, f: &ComplexField) -> ComplexField {
    derivative(f, axis).add_scaled(C64::i(), &pointwise_product(a.component(axis), f))
}

/// `u₀ = i (D₁u₁ + D₂u₂)`.
pub fn u0_from_u(u: &FieldPair, a: &VectorPotential) -> ComplexField {
    covariant_derivative(a, Axis::X1, &u.first)
        .add(&covariant_derivative(a, Axis::X2, &u.second))
        .scale(C64::i())
}

/// `‖D₁u₂ − D₂u₁‖_∞ / (1 + ‖D₁u₂‖_∞)`.
pub fn compatibility_residual(u: &FieldPair, a: &VectorPotential) -> f64 {
    let d12 = covariant_derivative(a, Axis::X1, &u.second);
    let d21 = covariant_derivative(a, Axis::X2, &u.first);
    d12.max_abs_diff(&d21) / (1.0 + d12.max_abs())
}

/// `E(z) = ½ ∫ |∇z|² / (1 + |z|²)²` under the normalised measure.
pub fn energy(map: &ProjectedMap) -> f64 {
    let d1 = derivative(&map.z, Axis::X1);
    let d2 = derivative(&map.z, Axis::X2);
    let density: f64 = map
        .z
        .samples()
        .iter()
        .zip(d1.samples().iter().zip(d2.samples()))
        .map(|(z, (a, b))| (a.norm_sqr() + b.norm_sqr()) / (1.0 + z.norm_sqr()).powi(2))
        .sum();
    0.5 * density / map.z.grid().len() as f64
}

/// `½(‖u₁‖²_{L²} + ‖u₂‖²_{L²})`.
pub fn field_energy(u: &FieldPair) -> f64 {
    0.5 * (lp_norm(&u.first, 2.0).powi(2) + lp_norm(&u.second, 2.0).powi(2))
}

/// `L²` distance between the mean-free parts of the connection built from
/// `z` and the potential `A[u,u]`, relative to `max(‖A‖_{L²}, ‖u‖²_{L²})`;
/// zero when both vanish.
pub fn two_route_discrepancy(u: &FieldPair, geometric: &VectorPotential) -> f64 {
    let geometric = geometric.mean_free();
    let formula = compute_a(u, u);
    let scale = geometric.l2_norm().max(2.0 * field_energy(u));
    let diff = geometric.sub(&formula).l2_norm();
    if diff == 0.0 {
        0.0
    } else {
        diff / scale
    }
}

/// Identity residuals of the map-to-field pipeline for one map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RoundtripResiduals {
    pub energy: f64,
    pub div_residual: f64,
    pub curvature_residual: f64,
    pub cons1_residual: f64,
    pub two_route_discrepancy: f64,
}

impl RoundtripResiduals {
    pub fn compute(map: &ProjectedMap) -> RoundtripResiduals {
        let (frame, a) = derive_u(map);
        RoundtripResiduals {
            energy: energy(map),
            div_residual: divergence_check(&a),
            curvature_residual: curvature_check(&frame.u, &a).expect("same grid"),
            cons1_residual: compatibility_residual(&frame.u, &a),
            two_route_discrepancy: two_route_discrepancy(&frame.u, &a),
        }
    }

    /// Residuals that measure discretisation error (the energy is excluded).
    pub fn residuals(&self) -> [(&'static str, f64); 4] {
        [
            ("div_residual", self.div_residual),
            ("curvature_residual", self.curvature_residual),
            ("cons1_residual", self.cons1_residual),
            ("two_route_discrepancy", self.two_route_discrepancy),
        ]
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::spectral::Grid;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn stereographic_lands_on_sphere(re in -1e3f64..1e3, im in -1e3f64..1e3) {
            let p = stereographic(C64::new(re, im));
            let norm = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
            prop_assert!((norm - 1.0).abs() < 1e-14);
        }
    }

    fn grid() -> Grid {
        Grid::new(32, 2.0 * PI).unwrap()
    }

    #[test]
    fn stereographic_reference_points() {
        assert_eq!(stereographic(C64::new(0.0, 0.0)), [0.0, 0.0, 1.0]);
        assert_eq!(stereographic(C64::new(1.0, 0.0)), [1.0, 0.0, 0.0]);
        assert_eq!(stereographic(C64::new(0.0, 1.0)), [0.0, 1.0, 0.0]);
    }

    #[test]
    fn constant_map_is_trivial() {
        let map = ProjectedMap::new(ComplexField::constant(grid(), C64::new(0.3, -0.2)));
        let (frame, a) = derive_u(&map);
        assert!(frame.u.max_abs() < 1e-15);
        assert!(frame.psi.max_abs() < 1e-15);
        assert!(a.max_abs() < 1e-15);
        assert_eq!(energy(&map), 0.0);
    }

    #[test]
    fn single_mode_energy() {
        let eps = 0.3;
        let map = ProjectedMap::new(ComplexField::plane_wave(grid(), 1, 0).scale_real(eps));
        let expected = eps * eps / (2.0 * (1.0 + eps * eps).powi(2));
        assert!((energy(&map) - expected).abs() < 1e-15);
    }

    #[test]
    fn frame_of_small_single_mode() {
        for eps in [0.1, 0.05, 0.025] {
            let map = ProjectedMap::new(ComplexField::plane_wave(grid(), 1, 0).scale_real(eps));
            let b = covariant_frame(&map);
            let leading = ComplexField::plane_wave(grid(), 1, 0).scale(C64::new(0.0, eps));
            assert!(b.first.max_abs_diff(&leading) <= 1.01 * eps.powi(3));
            assert!(b.second.max_abs() < 1e-15);
            assert!(b.first.max_abs() <= derivative(&map.z, Axis::X1).max_abs());
        }
    }

    #[test]
    fn single_mode_gauge_has_constant_connection() {
        let eps = 0.2;
        let map = ProjectedMap::new(ComplexField::plane_wave(grid(), 1, 0).scale_real(eps));
        assert!(psi_source(&map).max_abs() < 1e-14);
        let (frame, a) = derive_u(&map);
        assert!(frame.psi.max_abs() < 1e-14);
        let expected = -2.0 * eps * eps / (1.0 + eps * eps);
        assert!(a.a1.max_abs_diff(&ComplexField::constant(grid(), C64::new(expected, 0.0))) < 1e-15);
        assert!(a.a2.max_abs() < 1e-15);
        // the constant part is invisible to the zero-mean formula potential
        assert!(compute_a(&frame.u, &frame.u).max_abs() < 1e-15);
        let d = two_route_discrepancy(&frame.u, &a);
        assert!(d < 1e-12, "{d:e}");
    }

    #[test]
    fn real_map_has_no_gauge_source() {
        let z = ComplexField::from_real_fn(grid(), |x, y| 0.3 * x.sin() + 0.2 * (2.0 * y).cos());
        assert!(psi_source(&ProjectedMap::new(z)).max_abs() < 1e-14);
    }

    /// Sixth-order centred difference along one axis.
    fn finite_difference(f: &ComplexField, axis: Axis) -> ComplexField {
        let g = f.grid();
        let n = g.n();
        let h = g.spacing();
        let w = [(1, 3.0 / 4.0), (2, -3.0 / 20.0), (3, 1.0 / 60.0)];
        let s = f.samples();
        let at = |i1: usize, i2: usize| s[(i2 % n) * n + (i1 % n)];
        let samples = (0..g.len())
            .map(|index| {
                let (i1, i2) = (index % n, index / n);
                w.iter().fold(C64::default(), |acc, &(k, c)| {
                    let (p, m) = match axis {
                        Axis::X1 => (at(i1 + k, i2), at(i1 + n - k, i2)),
                        Axis::X2 => (at(i1, i2 + k), at(i1, i2 + n - k)),
                    };
                    acc + c * (p - m)
                }) / h
            })
            .collect();
        ComplexField::from_samples(g, samples).unwrap()
    }

    #[test]
    fn gauge_source_matches_finite_differences() {
        let g = Grid::new(256, 2.0 * PI).unwrap();
        let z = ComplexField::from_fn(g, |x, y| {
            C64::new(0.3 * x.sin() + 0.1 * (x + y).cos(), 0.2 * (2.0 * y).sin() - 0.1 * x.cos())
        });
        let map = ProjectedMap::new(z);
        let twist = frame_twist(&map, &covariant_frame(&map));
        let oracle = finite_difference(&twist.first, Axis::X1)
            .add(&finite_difference(&twist.second, Axis::X2))
            .scale_real(2.0);
        let source = psi_source(&map);
        assert!(source.max_abs() > 1e-3);
        assert!(source.max_abs_diff(&oracle) < 1e-8);
        let psi = solve_psi(&map);
        assert!(psi.mean().norm() < 1e-15);
        assert!(psi.max_abs_im() == 0.0);
    }

    #[test]
    fn smooth_map_identities() {
        let g = Grid::new(64, Grid::DEFAULT_LENGTH).unwrap();
        let z = ComplexField::from_fn(g, |x, y| {
            let k = g.fundamental();
            C64::new(0.3 * (k * x).sin(), 0.2 * (k * (x + 2.0 * y)).cos())
                + C64::new(0.0, 0.1) * C64::from_polar(1.0, k * (2.0 * x - y))
        });
        let map = ProjectedMap::new(z);
        let (frame, a) = derive_u(&map);
        let r = RoundtripResiduals::compute(&map);
        assert!(r.div_residual < 1e-12, "{r:?}");
        assert!(r.curvature_residual < 1e-8, "{r:?}");
        assert!(r.cons1_residual < 1e-8, "{r:?}");
        assert!(r.two_route_discrepancy < 1e-6, "{r:?}");
        assert!((energy(&map) - field_energy(&frame.u)).abs() < 1e-12 * energy(&map));
        // u_j = e^{iψ} b_j
        let phase = frame.psi.map(|p| C64::from_polar(1.0, p.re));
        let rebuilt = frame.b.first.zip_map(&phase, |b, e| b * e);
        assert!(rebuilt.max_abs_diff(&frame.u.first) < 1e-15);
        // shifting ψ by a constant leaves |u_j| unchanged
        let shifted = frame.u.first.scale(C64::from_polar(1.0, 0.7));
        for (x, y) in shifted.samples().iter().zip(frame.u.first.samples()) {
            assert!((x.norm() - y.norm()).abs() <= 1e-15 * y.norm().max(1.0));
        }
        assert!(a.max_abs_im() == 0.0);
    }

    #[test]
    fn constant_map_roundtrip_is_zero() {
        let map = ProjectedMap::new(ComplexField::constant(grid(), C64::new(0.4, 0.1)));
        let r = RoundtripResiduals::compute(&map);
        assert_eq!(r.energy, 0.0);
        for (_, v) in r.residuals() {
            assert_eq!(v, 0.0);
        }
    }

    #[test]
    fn u0_of_single_mode() {
        let u = FieldPair::new(ComplexField::plane_wave(grid(), 1, 0), ComplexField::zeros(grid()));
        let u0 = u0_from_u(&u, &VectorPotential::zeros(grid()));
        let expected = ComplexField::plane_wave(grid(), 1, 0).scale_real(-1.0);
        assert!(u0.max_abs_diff(&expected) < 1e-13);
        assert!(u0_from_u(&FieldPair::zeros(grid()), &VectorPotential::zeros(grid())).is_zero());
    }
}

