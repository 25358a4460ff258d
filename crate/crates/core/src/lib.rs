//! Pseudo-spectral laboratory for the modified Schrödinger map on the
//! periodic 2-torus.
//!
//! The crate is organised bottom-up:
//!
//! - [`spectral`]: grids, complex fields, FFTs, Fourier multipliers,
//!   dealiased products, norms and the binary snapshot format.
//! - [`littlewood_paley`]: dyadic partition of unity, block projectors,
//!   Besov/Hölder norms, paraproducts and the Besov interpolation inequality.
//! - [`gauge`]: the Coulomb-gauge potentials `A = (A₁, A₂)` and `A₀`,
//!   Riesz transforms and the gauge identity checks.
//! - [`transform`]: the stereographic/gauge pipeline from a map `z` to the
//!   fields `u_j`, the energy functional and the compatibility identities.
//! - [`evolution`]: integrating-factor RK4 for the gauged system, the drift
//!   Schrödinger equations and the difference system.
//! - [`harness`]: configuration, random data, inequality surveys, the
//!   stability experiment and report serialisation.

pub mod error;
pub mod evolution;
pub mod gauge;
pub mod harness;
pub mod littlewood_paley;
pub mod spectral;
pub mod transform;

pub use error::{Error, Result};
pub use spectral::{Axis, ComplexField, FieldPair, FourierMultiplier, Grid, C64};
