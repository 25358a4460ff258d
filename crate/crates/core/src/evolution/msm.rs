use super::kernel::{Kernel, Lawson};
use super::record::{spectral_mass, Recorder, Sampling, TrajectoryRecord};
use crate::spectral::{ComplexField, FieldPair, Grid, C64};

/// State `(u₁, u₂)` of the gauged system at time `t`.
#[derive(Debug, Clone)]
pub struct MsmState {
    pub u: FieldPair,
    pub t: f64,
}

impl MsmState {
    pub fn new(u: FieldPair) -> MsmState {
        MsmState { u, t: 0.0 }
    }

    pub fn grid(&self) -> Grid {
        self.u.grid()
    }

    /// `‖u₁‖²_{L²} + ‖u₂‖²_{L²}`.
    pub fn mass(&self) -> f64 {
        spectral_mass(&spectra(&self.u))
    }
}

fn spectra(u: &FieldPair) -> Vec<Vec<C64>> {
    vec![u.first.spectrum().to_vec(), u.second.spectrum().to_vec()]
}

fn pair_from_spectra(grid: Grid, s: &[Vec<C64>]) -> FieldPair {
    let field = |c: &Vec<C64>| ComplexField::from_spectrum(grid, c.clone()).expect("length matches");
    FieldPair::new(field(&s[0]), field(&s[1]))
}

/// Everything in `∂_t u_j` except `iΔu_j`:
/// `−2∇·(A u_j) − i(A₀ + |A|²)u_j + 4 Im(u_kū_j)u_k` with `A = A[u,u]`,
/// `A₀ = A₀[u,u]` and `k ≠ j`. Cubic terms are nested dealiased products,
/// e.g. `|A|²u_j` is `P(P(|A|²) u_j)` with `P` the truncation to the grid.
pub fn msm_nonlinear(u: &FieldPair) -> FieldPair {
    let kernel = Kernel::new(u.grid());
    pair_from_spectra(u.grid(), &kernel.msm_nonlinear(&spectra(u)))
}

/// `∂_t u_j = iΔu_j − 2∇·(A u_j) − i(A₀ + |A|²)u_j + 4 Im(u_kū_j)u_k`.
pub fn msm_rhs(state: &MsmState) -> FieldPair {
    let grid = state.grid();
    let kernel = Kernel::new(grid);
    let mut out = kernel.msm_nonlinear(&spectra(&state.u));
    for (c, u) in out.iter_mut().zip([&state.u.first, &state.u.second]) {
        for ((o, &x), &r2) in c.iter_mut().zip(u.spectrum()).zip(&kernel.xi_sqr) {
            *o += C64::new(0.0, -r2) * x;
        }
    }
    pair_from_spectra(grid, &out)
}

/// Exact free Schrödinger flow `e^{itΔ} f`.
pub fn free_evolution(f: &ComplexField, t: f64) -> ComplexField {
    let grid = f.grid();
    f.map_spectrum(|i, c| c * C64::from_polar(1.0, -grid.mode(i).norm_sqr() * t))
}

/// Stepper for the gauged system holding the state in spectral form.
pub struct MsmIntegrator {
    kernel: Kernel,
    stepper: Lawson,
    spectra: Vec<Vec<C64>>,
    t0: f64,
    steps: usize,
    dt: f64,
}

impl MsmIntegrator {
    pub fn new(state: &MsmState, dt: f64) -> MsmIntegrator {
        let kernel = Kernel::new(state.grid());
        let stepper = Lawson::new(&kernel.xi_sqr, dt);
        MsmIntegrator {
            kernel,
            stepper,
            spectra: spectra(&state.u),
            t0: state.t,
            steps: 0,
            dt,
        }
    }

    pub fn t(&self) -> f64 {
        self.t0 + self.steps as f64 * self.dt
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn mass(&self) -> f64 {
        spectral_mass(&self.spectra)
    }

    pub fn step(&mut self) {
        let kernel = &self.kernel;
        self.stepper
            .step(self.t(), &mut self.spectra, &mut |_, u| kernel.msm_nonlinear(u));
        self.steps += 1;
    }

    pub fn state(&self) -> MsmState {
        MsmState {
            u: pair_from_spectra(self.kernel.grid, &self.spectra),
            t: self.t(),
        }
    }
}

/// Integrates `n_steps` steps of size `dt`, recording norms of the pair.
///
/// A blow-up (non-finite values or a norm above the threshold) stops the
/// integration; the partial record carries the diagnostic.
pub fn evolve_msm(state: &MsmState, dt: f64, n_steps: usize, sampling: Sampling) -> TrajectoryRecord {
    let mut integrator = MsmIntegrator::new(state, dt);
    let mut recorder = Recorder::new(state.grid(), sampling);
    let observe = |recorder: &mut Recorder, step: usize, integrator: &MsmIntegrator| {
        let s = integrator.state();
        recorder.observe(step, s.t, &[s.u.first, s.u.second])
    };
    if !observe(&mut recorder, 0, &integrator) {
        return recorder.finish();
    }
    for step in 1..=n_steps {
        integrator.step();
        let mass = integrator.mass();
        if !mass.is_finite() || mass.sqrt() > super::record::BLOW_UP_THRESHOLD {
            recorder.abort(integrator.t(), mass.sqrt());
            break;
        }
        if recorder.wants(step, n_steps) && !observe(&mut recorder, step, &integrator) {
            break;
        }
    }
    recorder.finish()
}
