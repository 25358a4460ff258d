use super::kernel::{Kernel, Lawson};
use super::record::{spectral_mass, Recorder, Sampling, TrajectoryRecord, BLOW_UP_THRESHOLD};
use crate::error::{Error, Result};
use crate::spectral::{sobolev_norm, Axis, ComplexField, FourierMultiplier, Grid, C64};

/// How the drift enters: `v·∇u` or `∇·(vu)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DriftForm {
    Advective,
    Divergence,
}

/// Time-periodic forcing `F(t) = profile · e^{−iωt}`.
#[derive(Debug, Clone)]
pub struct Forcing {
    pub profile: ComplexField,
    pub omega: f64,
}

impl Forcing {
    pub fn at(&self, t: f64) -> ComplexField {
        self.profile.scale(C64::from_polar(1.0, -self.omega * t))
    }

    /// `sup_t ‖F(t)‖_{H^s}`, which is attained at every `t`.
    pub fn sobolev_norm(&self, s: f64) -> f64 {
        sobolev_norm(&self.profile, s)
    }
}

/// `i∂_t u + Δu + i v·∇u = F` (advective) or `i∂_t u + Δu + i∇·(vu) = F`
/// (divergence form) with a real, time-independent drift `v`.
#[derive(Debug, Clone)]
pub struct DriftProblem {
    pub v1: ComplexField,
    pub v2: ComplexField,
    pub forcing: Option<Forcing>,
    pub form: DriftForm,
}

impl DriftProblem {
    pub fn new(
        v1: ComplexField,
        v2: ComplexField,
        form: DriftForm,
        forcing: Option<Forcing>,
    ) -> Result<DriftProblem> {
        v1.grid().ensure_same(&v2.grid())?;
        if let Some(f) = &forcing {
            v1.grid().ensure_same(&f.profile.grid())?;
        }
        for (name, v) in [("v1", &v1), ("v2", &v2)] {
            if v.max_abs_im() > 1e-12 * v.max_abs().max(1.0) {
                return Err(Error::InvalidParameter(format!(
                    "drift component {name} is not real (max |Im| = {:e})",
                    v.max_abs_im()
                )));
            }
        }
        Ok(DriftProblem {
            v1: v1.re(),
            v2: v2.re(),
            forcing,
            form,
        })
    }

    pub fn grid(&self) -> Grid {
        self.v1.grid()
    }

    /// `sup_x |∇v(x)|` (Hilbert–Schmidt), sampled on the refined grid.
    pub fn gradient_sup(&self) -> f64 {
        let grid = self.grid();
        let parts: Vec<Vec<C64>> = [&self.v1, &self.v2]
            .iter()
            .flat_map(|v| {
                Axis::BOTH.map(|axis| {
                    FourierMultiplier::derivative(grid, axis)
                        .apply(v)
                        .padded()
                        .samples()
                        .to_vec()
                })
            })
            .collect();
        (0..parts[0].len())
            .map(|i| parts.iter().map(|p| p[i].re * p[i].re).sum::<f64>().sqrt())
            .fold(0.0, f64::max)
    }

    /// `e^{4t‖∇v‖_∞}(‖u₀‖_{H^s} + t sup‖F‖_{H^s})` for `t ≥ 0`.
    pub fn envelope(&self, t: f64, s: f64, u0: &ComplexField) -> f64 {
        let forcing = self.forcing.as_ref().map_or(0.0, |f| f.sobolev_norm(s));
        (4.0 * t.abs() * self.gradient_sup()).exp() * (sobolev_norm(u0, s) + t.abs() * forcing)
    }

    /// `∂_t u = iΔu − v·∇u − iF` or `iΔu − ∇·(vu) − iF`.
    pub fn rhs(&self, t: f64, u: &ComplexField) -> ComplexField {
        let ops = DriftOps::new(self);
        let grid = self.grid();
        let mut out = ops.nonlinear(t, u.spectrum());
        for ((o, &x), &r2) in out.iter_mut().zip(u.spectrum()).zip(&ops.kernel.xi_sqr) {
            *o += C64::new(0.0, -r2) * x;
        }
        ComplexField::from_spectrum(grid, out).expect("length matches")
    }
}

struct DriftOps<'a> {
    problem: &'a DriftProblem,
    kernel: Kernel,
    v_padded: [Vec<f64>; 2],
}

impl<'a> DriftOps<'a> {
    fn new(problem: &'a DriftProblem) -> DriftOps<'a> {
        let kernel = Kernel::new(problem.grid());
        let real = |v: &ComplexField| -> Vec<f64> {
            kernel.pad(v.spectrum()).iter().map(|c| c.re).collect()
        };
        let v_padded = [real(&problem.v1), real(&problem.v2)];
        DriftOps {
            problem,
            kernel,
            v_padded,
        }
    }

    fn nonlinear(&self, t: f64, u: &[C64]) -> Vec<C64> {
        let k = &self.kernel;
        let [v1, v2] = &self.v_padded;
        let mut out = match self.problem.form {
            DriftForm::Advective => {
                let deriv = |axis: usize| -> Vec<C64> {
                    let spec: Vec<C64> = u
                        .iter()
                        .zip(&k.odd)
                        .map(|(c, xi)| C64::new(0.0, xi[axis]) * c)
                        .collect();
                    k.pad(&spec)
                };
                let (d1, d2) = (deriv(0), deriv(1));
                let transport: Vec<C64> = (0..d1.len())
                    .map(|x| -(v1[x] * d1[x] + v2[x] * d2[x]))
                    .collect();
                k.truncate(transport)
            }
            DriftForm::Divergence => {
                let pu = k.pad(u);
                let f1 = k.truncate(pu.iter().zip(v1).map(|(a, b)| a * b).collect());
                let f2 = k.truncate(pu.iter().zip(v2).map(|(a, b)| a * b).collect());
                (0..u.len())
                    .map(|i| {
                        let [x1, x2] = k.odd[i];
                        C64::new(0.0, -1.0) * (x1 * f1[i] + x2 * f2[i])
                    })
                    .collect()
            }
        };
        if let Some(f) = &self.problem.forcing {
            let phase = C64::new(0.0, -1.0) * C64::from_polar(1.0, -f.omega * t);
            for (o, c) in out.iter_mut().zip(f.profile.spectrum()) {
                *o += phase * c;
            }
        }
        out
    }
}

/// Integrates a drift problem from `u0` with step `dt` (which may be
/// negative), recording the `H^s` ladder at the sampling stride.
pub fn evolve_drift(
    problem: &DriftProblem,
    u0: &ComplexField,
    dt: f64,
    n_steps: usize,
    sampling: Sampling,
) -> TrajectoryRecord {
    let grid = problem.grid();
    assert_eq!(grid, u0.grid(), "initial data and drift on different grids");
    let ops = DriftOps::new(problem);
    let stepper = Lawson::new(&ops.kernel.xi_sqr, dt);
    let mut state = vec![u0.spectrum().to_vec()];
    let mut recorder = Recorder::new(grid, sampling);
    let field = |s: &[Vec<C64>]| ComplexField::from_spectrum(grid, s[0].clone()).expect("length");
    if !recorder.observe(0, 0.0, &[u0.clone()]) {
        return recorder.finish();
    }
    let mut t = 0.0;
    for step in 1..=n_steps {
        stepper.step(t, &mut state, &mut |time, u| vec![ops.nonlinear(time, &u[0])]);
        t = step as f64 * dt;
        let mass = spectral_mass(&state);
        if !mass.is_finite() || mass.sqrt() > BLOW_UP_THRESHOLD {
            recorder.abort(t, mass.sqrt());
            break;
        }
        if recorder.wants(step, n_steps) && !recorder.observe(step, t, &[field(&state)]) {
            break;
        }
    }
    recorder.finish()
}

/// The state reached by [`evolve_drift`] without recording norms.
pub fn drift_flow(problem: &DriftProblem, u0: &ComplexField, dt: f64, n_steps: usize) -> ComplexField {
    let grid = problem.grid();
    let ops = DriftOps::new(problem);
    let stepper = Lawson::new(&ops.kernel.xi_sqr, dt);
    let mut state = vec![u0.spectrum().to_vec()];
    for step in 0..n_steps {
        stepper.step(step as f64 * dt, &mut state, &mut |time, u| {
            vec![ops.nonlinear(time, &u[0])]
        });
    }
    ComplexField::from_spectrum(grid, state.pop().expect("one component")).expect("length")
}
