mod common;

use common::{default_grid, drift_errors, msm_errors, observed_orders, pair, random_drift, torus};
use msm_lab::evolution::{
    difference_rhs, drift_flow, evolve_drift, evolve_msm, free_evolution, msm_rhs, DriftForm, DriftProblem,
    MsmIntegrator, MsmState, Sampling,
};
use msm_lab::gauge::compute_a;
use msm_lab::harness::random::{random_map, rng_for};
use msm_lab::transform::{derive_u, energy};
use msm_lab::{ComplexField, FieldPair, C64};

#[test]
fn single_mode_phase_is_exact() {
    // u₂ = 0 and |u₁| constant: A = 0 and A₀ = 2ε², so u₁ = ε e^{i(x₁ − (1 + 2ε²)t)}.
    let grid = torus(16);
    let t_end = 1.0;
    let mut deviations = Vec::new();
    for eps in [0.2, 0.1, 0.05] {
        let wave = ComplexField::plane_wave(grid, 1, 0).scale_real(eps);
        let state = MsmState::new(FieldPair::new(wave.clone(), ComplexField::zeros(grid)));
        let mut it = MsmIntegrator::new(&state, 1e-2);
        for _ in 0..100 {
            it.step();
        }
        let u = it.state().u;
        let exact = wave.scale(C64::from_polar(1.0, -(1.0 + 2.0 * eps * eps) * t_end));
        assert!(u.first.max_abs_diff(&exact) < 1e-12, "eps {eps}");
        assert!(u.second.max_abs() < 1e-15);
        deviations.push(u.first.max_abs_diff(&free_evolution(&wave, t_end)));
    }
    for w in deviations.windows(2) {
        let ratio = w[0] / w[1];
        assert!((ratio - 8.0).abs() < 0.1, "ε³ scaling broken: {ratio}");
    }
}

#[test]
fn msm_integrator_is_fourth_order() {
    let u0 = pair(default_grid(32), 0.03, 8.0, 3, 0);
    let errors = msm_errors(&u0, 0.5, &[8, 16, 32], 256);
    for order in observed_orders(&errors) {
        assert!(order >= 3.5, "{errors:?}");
    }
}

#[test]
fn drift_integrator_is_fourth_order() {
    for form in [DriftForm::Advective, DriftForm::Divergence] {
        let (problem, u0) = random_drift(default_grid(32), 5, form, true);
        let errors = drift_errors(&problem, &u0, 1.0, &[16, 32, 64], 512);
        for order in observed_orders(&errors) {
            assert!(order >= 3.5, "{form:?}: {errors:?}");
        }
    }
}

#[test]
fn free_drift_keeps_every_norm() {
    let grid = default_grid(32);
    let (_, u0) = random_drift(grid, 1, DriftForm::Advective, false);
    let zero = ComplexField::zeros(grid);
    let problem = DriftProblem::new(zero.clone(), zero, DriftForm::Divergence, None).unwrap();
    let record = evolve_drift(&problem, &u0, 0.05, 40, Sampling { stride: 4, ..Sampling::default() });
    let first = record.samples[0].ladder;
    for s in &record.samples {
        for (a, b) in s.ladder.iter().zip(first) {
            assert!((a - b).abs() < 1e-10 * b);
        }
    }
}

#[test]
fn drift_norms_stay_under_envelope() {
    let grid = default_grid(32);
    for seed in 0..10 {
        for (form, exponents) in [(DriftForm::Advective, [0.0, 1.0]), (DriftForm::Divergence, [-1.0, 0.0])] {
            let (problem, u0) = random_drift(grid, seed, form, seed % 2 == 0);
            let record = evolve_drift(&problem, &u0, 1e-2, 50, Sampling { stride: 5, ..Sampling::default() });
            for sample in &record.samples {
                for s in exponents {
                    let measured = sample.sobolev(s).unwrap();
                    assert!(measured <= problem.envelope(sample.t, s, &u0) * (1.0 + 1e-12));
                }
            }
        }
    }
}

#[test]
fn advective_and_divergence_flows_are_adjoint() {
    let grid = default_grid(32);
    let (advective, f) = random_drift(grid, 2, DriftForm::Advective, false);
    let divergence = DriftProblem::new(advective.v1.clone(), advective.v2.clone(), DriftForm::Divergence, None).unwrap();
    let (_, g) = random_drift(grid, 3, DriftForm::Divergence, false);
    let (dt, steps) = (5e-3, 100);
    let lhs = drift_flow(&advective, &f, dt, steps).inner(&g);
    let rhs = f.inner(&drift_flow(&divergence, &g, -dt, steps));
    assert!((lhs - rhs).norm() < 1e-9 * lhs.norm().max(1.0), "{lhs} vs {rhs}");
}

#[test]
fn squared_potential_polarization() {
    let grid = default_grid(32);
    for seed in 0..5 {
        let (u, v) = (pair(grid, 1.0, 10.0, seed, 0), pair(grid, 1.0, 10.0, seed, 1));
        let (auu, avv) = (compute_a(&u, &u), compute_a(&v, &v));
        let lhs = auu.dot_self().sub(&avv.dot_self());
        let rhs = auu.add(&avv).dot(&compute_a(&u.add(&v), &u.sub(&v)));
        assert!(lhs.max_abs_diff(&rhs) < 1e-10 * lhs.max_abs());
    }
}

#[test]
fn difference_system_against_direct_evaluation() {
    let grid = default_grid(32);
    for seed in 0..3 {
        let (u, v) = (pair(grid, 0.03, 8.0, seed, 0), pair(grid, 0.03, 8.0, seed, 1));
        let direct = msm_rhs(&MsmState::new(u.clone())).sub(&msm_rhs(&MsmState::new(v.clone())));
        assert!(difference_rhs(&u, &v).max_abs_diff(&direct) < 1e-9 * direct.max_abs());
    }
}

#[test]
fn map_derived_data_keeps_its_energy() {
    let grid = torus(32);
    let map = random_map(grid, &common::spec(0.5, 3.0), &mut rng_for(7, 0));
    let (frame, _) = derive_u(&map);
    let e0 = energy(&map);
    let record = evolve_msm(&MsmState::new(frame.u), 1e-3, 200, Sampling::default()).completed().unwrap();
    for s in &record.samples {
        assert!((0.5 * s.mass() - e0).abs() < 1e-9 * e0, "t = {}", s.t);
    }
    let times = record.times();
    assert!(times.windows(2).all(|w| w[1] > w[0]));
}
