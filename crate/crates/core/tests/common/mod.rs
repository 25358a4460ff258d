#![allow(dead_code)]

use std::f64::consts::PI;

use msm_lab::harness::random::{random_pair, random_scalar, rng_for, FieldSpec};
use msm_lab::{ComplexField, FieldPair, Grid};

pub fn torus(n: usize) -> Grid {
    Grid::new(n, 2.0 * PI).unwrap()
}

pub fn default_grid(n: usize) -> Grid {
    Grid::new(n, Grid::DEFAULT_LENGTH).unwrap()
}

pub fn spec(amplitude: f64, max_mode: f64) -> FieldSpec {
    FieldSpec {
        amplitude,
        decay: 2.0,
        max_mode,
    }
}

/// A random field filling most of the grid's band.
pub fn field(grid: Grid, seed: u64) -> ComplexField {
    let max_mode = (grid.n() / 2 - 1) as f64;
    random_scalar(grid, &spec(1.0, max_mode), &mut rng_for(seed, 0))
}

/// A random field with `|k| ≤ n/4`, so products of two stay on the grid.
pub fn narrow_field(grid: Grid, seed: u64) -> ComplexField {
    random_scalar(grid, &spec(1.0, (grid.n() / 4 - 1) as f64), &mut rng_for(seed, 1))
}

pub fn pair(grid: Grid, amplitude: f64, max_mode: f64, seed: u64, stream: u64) -> FieldPair {
    random_pair(grid, &spec(amplitude, max_mode), &mut rng_for(seed, stream))
}

pub fn rel(a: f64, scale: f64) -> f64 {
    if scale == 0.0 {
        a
    } else {
        a / scale
    }
}

use msm_lab::evolution::{drift_flow, DriftForm, DriftProblem, Forcing, MsmIntegrator, MsmState};
use msm_lab::harness::random::random_real_vector;

/// A random smooth real drift with optional forcing, as used by the drift tests.
pub fn random_drift(grid: Grid, seed: u64, form: DriftForm, forced: bool) -> (DriftProblem, ComplexField) {
    let (v1, v2) = random_real_vector(grid, &spec(0.3, 6.0), &mut rng_for(seed, 10));
    let u0 = random_scalar(grid, &spec(1.0, 8.0), &mut rng_for(seed, 11));
    let forcing = forced.then(|| Forcing {
        profile: random_scalar(grid, &spec(0.2, 6.0), &mut rng_for(seed, 12)),
        omega: 0.7,
    });
    (DriftProblem::new(v1, v2, form, forcing).unwrap(), u0)
}

/// Observed orders `log₂(e(h)/e(h/2))` against a fine reference, for
/// `steps`, `2·steps`, ... up to `levels` levels.
pub fn observed_orders(errors: &[f64]) -> Vec<f64> {
    errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}

pub fn msm_errors(u0: &FieldPair, t_end: f64, steps: &[usize], reference_steps: usize) -> Vec<f64> {
    let run = |k: usize| {
        let mut it = MsmIntegrator::new(&MsmState::new(u0.clone()), t_end / k as f64);
        for _ in 0..k {
            it.step();
        }
        it.state().u
    };
    let reference = run(reference_steps);
    steps.iter().map(|&k| run(k).max_abs_diff(&reference)).collect()
}

pub fn drift_errors(problem: &DriftProblem, u0: &ComplexField, t_end: f64, steps: &[usize], reference_steps: usize) -> Vec<f64> {
    let reference = drift_flow(problem, u0, t_end / reference_steps as f64, reference_steps);
    steps
        .iter()
        .map(|&k| drift_flow(problem, u0, t_end / k as f64, k).max_abs_diff(&reference))
        .collect()
}
