//! Difference-flow stability: evolve `u` and a perturbed copy `v`, track
//! `‖u − v‖_{H^{-1/2}}` and compare it with the Gronwall envelope
//! `‖w(0)‖ exp(c ∫₀ᵗ (1 + ‖u‖²_B + ‖v‖²_B)² dτ)`, `B = B^{1/2}_{q,2}`.

use serde::Serialize;

use super::config::ExperimentConfig;
use super::random::{random_pair, rng_for};
use crate::error::{Error, Result};
use crate::evolution::{MsmIntegrator, MsmState, BLOW_UP_THRESHOLD};
use crate::gauge::pair_norm;
use crate::littlewood_paley::DyadicPartition;
use crate::spectral::{sobolev_norm, FieldPair, C64};

/// One `(u₀, δ)` run.
#[derive(Debug, Clone, Serialize)]
pub struct StabilityRun {
    pub draw: usize,
    pub delta: f64,
    /// `‖w(t)‖_{H^{-1/2}}` at the sample times.
    pub w: Vec<f64>,
    /// `sup_t ‖w(t)‖ / ‖w(0)‖`.
    pub growth: f64,
    /// `∫₀ᵗ (1 + ‖u‖²_B + ‖v‖²_B)² dτ` at the sample times.
    pub integral: Vec<f64>,
    /// Smallest `c ≥ 0` with `‖w(t)‖ ≤ ‖w(0)‖ e^{c I(t)}` at every sample.
    pub fitted_c: f64,
    /// The same fit using every other sample.
    pub fitted_c_coarse: f64,
    pub envelope: Vec<f64>,
    pub dominated: bool,
    /// Smallest `c` with `‖w(t)‖ ≤ ‖w(0)‖ exp(c (1 + ‖u‖²_{L⁴B} + ‖v‖²_{L⁴B})²)`,
    /// the time norms taken over `[0, t]`.
    pub fitted_c_l4: f64,
    pub l4_besov_u: f64,
    pub l4_besov_v: f64,
    pub sup_h_half_u: f64,
    pub sup_h_half_v: f64,
    pub v0_h_half: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilityReport {
    pub config_hash: String,
    pub s: f64,
    pub q: f64,
    /// Whether `s > 3/4`.
    pub in_theorem_range: bool,
    pub times: Vec<f64>,
    pub runs: Vec<StabilityRun>,
    /// `max/min` of `growth` over the δ scan of the first draw.
    pub delta_spread: f64,
    /// Largest `|c − mean|/mean` of the fitted `c` over draws at the first δ.
    pub c_variation: f64,
    /// `(max − min)/mean` of the same values.
    pub c_range: f64,
    /// Largest relative change of the fitted `c` when the sampling stride doubles.
    pub stride_change: f64,
}

impl StabilityReport {
    pub fn all_dominated(&self) -> bool {
        self.runs.iter().all(|r| r.dominated)
    }
}

/// Sampled states and their `(B^{1/2}_{q,2}, H^{1/2})` norms.
struct Track {
    states: Vec<FieldPair>,
    besov: Vec<f64>,
    h_half: Vec<f64>,
}

fn track(
    partition: &DyadicPartition,
    q: f64,
    u0: &FieldPair,
    dt: f64,
    n_steps: usize,
    stride: usize,
) -> Result<(Vec<f64>, Track)> {
    let mut integrator = MsmIntegrator::new(&MsmState::new(u0.clone()), dt);
    let mut times = Vec::new();
    let mut t = Track {
        states: Vec::new(),
        besov: Vec::new(),
        h_half: Vec::new(),
    };
    let mut push = |integrator: &MsmIntegrator, times: &mut Vec<f64>| {
        let state = integrator.state();
        t.besov
            .push(pair_norm(&state.u, |f| partition.besov_norm(f, 0.5, q, 2.0)));
        t.h_half.push(pair_norm(&state.u, |f| sobolev_norm(f, 0.5)));
        times.push(state.t);
        t.states.push(state.u);
    };
    push(&integrator, &mut times);
    for step in 1..=n_steps {
        integrator.step();
        let norm = integrator.mass().sqrt();
        if !norm.is_finite() || norm > BLOW_UP_THRESHOLD {
            return Err(Error::BlowUp {
                t: integrator.t(),
                norm: "L2",
                value: norm,
            });
        }
        if step % stride == 0 || step == n_steps {
            push(&integrator, &mut times);
        }
    }
    Ok((times, t))
}

/// Cumulative trapezoid rule.
fn cumulative_trapezoid(times: &[f64], values: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; times.len()];
    for k in 1..times.len() {
        out[k] = out[k - 1] + 0.5 * (times[k] - times[k - 1]).abs() * (values[k] + values[k - 1]);
    }
    out
}

/// Smallest `c ≥ 0` with `w_k ≤ w_0 exp(c x_k)` for all `k ≥ 1`.
fn fit_rate(w: &[f64], x: &[f64]) -> f64 {
    let w0 = w[0];
    w.iter()
        .zip(x)
        .skip(1)
        .filter(|(_, &x)| x > 0.0)
        .map(|(&wk, &xk)| (wk / w0).ln() / xk)
        .fold(0.0, f64::max)
}

fn fit(times: &[f64], w: &[f64], u: &Track, v: &Track) -> (f64, Vec<f64>) {
    let density: Vec<f64> = u
        .besov
        .iter()
        .zip(&v.besov)
        .map(|(a, b)| (1.0 + a * a + b * b).powi(2))
        .collect();
    let integral = cumulative_trapezoid(times, &density);
    (fit_rate(w, &integral), integral)
}

fn every_other<T: Clone>(x: &[T]) -> Vec<T> {
    x.iter().step_by(2).cloned().collect()
}

fn compare(draw: usize, delta: f64, times: &[f64], u: &Track, v: &Track) -> StabilityRun {
    let w: Vec<f64> = u
        .states
        .iter()
        .zip(&v.states)
        .map(|(a, b)| pair_norm(&a.sub(b), |f| sobolev_norm(f, -0.5)))
        .collect();
    let (fitted_c, integral) = fit(times, &w, u, v);
    let coarse = |x: &Track| Track {
        states: Vec::new(),
        besov: every_other(&x.besov),
        h_half: Vec::new(),
    };
    let (fitted_c_coarse, _) = fit(&every_other(times), &every_other(&w), &coarse(u), &coarse(v));
    let envelope: Vec<f64> = integral.iter().map(|i| w[0] * (fitted_c * i).exp()).collect();
    let dominated = w
        .iter()
        .zip(&envelope)
        .all(|(wk, ek)| *wk <= ek * (1.0 + 1e-12));

    let l4 = |track: &Track| {
        let p: Vec<f64> = track.besov.iter().map(|b| b.powi(4)).collect();
        cumulative_trapezoid(times, &p)
    };
    let (l4u, l4v) = (l4(u), l4(v));
    let l4_exponent: Vec<f64> = l4u
        .iter()
        .zip(&l4v)
        .map(|(a, b)| (1.0 + a.sqrt() + b.sqrt()).powi(2))
        .collect();
    let growth = w.iter().map(|wk| wk / w[0]).fold(0.0, f64::max);
    StabilityRun {
        draw,
        delta,
        growth,
        fitted_c,
        fitted_c_coarse,
        envelope,
        dominated,
        fitted_c_l4: fit_rate(&w, &l4_exponent),
        l4_besov_u: l4u.last().copied().unwrap_or(0.0).powf(0.25),
        l4_besov_v: l4v.last().copied().unwrap_or(0.0).powf(0.25),
        sup_h_half_u: u.h_half.iter().copied().fold(0.0, f64::max),
        sup_h_half_v: v.h_half.iter().copied().fold(0.0, f64::max),
        v0_h_half: v.h_half[0],
        w,
        integral,
    }
}

/// Runs the δ scan on the first draw and the first δ on every further draw.
/// The perturbation direction, normalised to unit `H^{-1/2}` norm, comes from
/// RNG stream 0 and is shared by all draws; draw `d` takes `u₀` from stream `d + 1`.
pub fn run_stability_experiment(config: &ExperimentConfig) -> Result<StabilityReport> {
    let deltas = &config.experiment.deltas;
    if deltas.is_empty() || config.experiment.draws == 0 {
        return Err(Error::EmptySampleSet);
    }
    if deltas.iter().any(|&d| d <= 0.0) {
        return Err(Error::InvalidParameter("perturbation sizes must be positive".into()));
    }
    let grid = config.grid();
    let spec = config.field_spec();
    let partition = DyadicPartition::new(grid);
    let (q, seed, dt, n_steps, stride) = (
        config.experiment.q,
        config.ensemble.seed,
        config.time.dt,
        config.n_steps(),
        config.time.stride,
    );

    let mut runs = Vec::new();
    let mut times = Vec::new();
    let direction = random_pair(grid, &spec, &mut rng_for(seed, 0));
    let size = pair_norm(&direction, |f| sobolev_norm(f, -0.5));
    if size == 0.0 {
        return Err(Error::InvalidParameter("zero perturbation direction".into()));
    }
    for draw in 0..config.experiment.draws {
        let u0 = random_pair(grid, &spec, &mut rng_for(seed, draw as u64 + 1));
        let (t, u) = track(&partition, q, &u0, dt, n_steps, stride)?;
        let scan = if draw == 0 { &deltas[..] } else { &deltas[..1] };
        for &delta in scan {
            let v0 = u0.add_scaled(C64::from(delta / size), &direction);
            let (_, v) = track(&partition, q, &v0, dt, n_steps, stride)?;
            runs.push(compare(draw, delta, &t, &u, &v));
        }
        times = t;
    }

    let first: Vec<f64> = runs.iter().filter(|r| r.draw == 0).map(|r| r.growth).collect();
    let delta_spread = first.iter().copied().fold(0.0, f64::max) / first.iter().copied().fold(f64::INFINITY, f64::min);
    let cs: Vec<f64> = runs.iter().filter(|r| r.delta == deltas[0]).map(|r| r.fitted_c).collect();
    let mean = cs.iter().sum::<f64>() / cs.len() as f64;
    let spread = cs.iter().copied().fold(0.0, f64::max) - cs.iter().copied().fold(f64::INFINITY, f64::min);
    let (c_variation, c_range) = if mean > 0.0 {
        let deviation = cs.iter().map(|c| (c - mean).abs()).fold(0.0, f64::max);
        (deviation / mean, spread / mean)
    } else {
        (0.0, 0.0)
    };
    let stride_change = runs
        .iter()
        .map(|r| {
            if r.fitted_c > 0.0 {
                (r.fitted_c_coarse - r.fitted_c).abs() / r.fitted_c
            } else {
                0.0
            }
        })
        .fold(0.0, f64::max);

    Ok(StabilityReport {
        config_hash: config.hash(),
        s: config.experiment.s,
        q,
        in_theorem_range: config.in_theorem_range(),
        times,
        runs,
        delta_spread,
        c_variation,
        c_range,
        stride_change,
    })
}
