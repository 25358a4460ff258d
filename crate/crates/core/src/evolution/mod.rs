//! Time integration of the gauged system, the drift equations and the
//! difference system.
//!
//! All integrators use the integrating-factor form: the free propagator
//! `e^{itΔ}` is applied exactly in spectral space and classical RK4 advances
//! the remainder. Products are dealiased on the `2n × 2n` grid.

mod difference;
mod drift;
mod kernel;
mod msm;
mod record;

pub use difference::difference_rhs;
pub use drift::{drift_flow, evolve_drift, DriftForm, DriftProblem, Forcing};
pub use msm::{evolve_msm, free_evolution, msm_nonlinear, msm_rhs, MsmIntegrator, MsmState};
pub use record::{
    BlowUp, NormSample, Sampling, Snapshot, TrajectoryRecord, BLOW_UP_THRESHOLD, SOBOLEV_LADDER,
};
