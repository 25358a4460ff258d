//! Seeded band-limited random fields.
//!
//! Mode `k` gets the coefficient `amplitude·(1+|ξ_k|²)^{−decay/2}·e^{iθ_k}`
//! with independent uniform phases. Phases are drawn for every integer
//! wavevector in `[−K, K]²` in a fixed order, so a field drawn on a finer grid
//! of the same torus has exactly the same coefficients.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::spectral::{ComplexField, FieldPair, Grid, C64};
use crate::transform::ProjectedMap;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSpec {
    pub amplitude: f64,
    /// Spectral decay exponent; `1 + s` gives `H^s`-borderline data.
    pub decay: f64,
    /// Largest integer wavevector radius `|k|` that is populated.
    pub max_mode: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Scalar,
    Pair,
    /// Stereographic map coordinate, rescaled so that `Σ_k |ẑ(k)| = amplitude`,
    /// which bounds `|z|` pointwise by the amplitude on every grid.
    Map,
    /// Real two-component vector field.
    RealVector,
}

/// Generator for stream `stream` of seed `seed`. Distinct streams are
/// independent, so ensemble member `i` does not depend on the others.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn random_scalar(grid: Grid, spec: &FieldSpec, rng: &mut impl Rng) -> ComplexField {
    let mut spectrum = vec![C64::default(); grid.len()];
    let reach = spec.max_mode.floor().max(0.0) as i64;
    let half = (grid.n() / 2) as i64;
    let base = grid.fundamental();
    for k2 in -reach..=reach {
        for k1 in -reach..=reach {
            let theta = rng.gen::<f64>() * 2.0 * PI;
            let radius = ((k1 * k1 + k2 * k2) as f64).sqrt();
            if radius > spec.max_mode || k1.abs() >= half || k2.abs() >= half {
                continue;
            }
            let xi2 = base * base * (k1 * k1 + k2 * k2) as f64;
            let magnitude = spec.amplitude * (1.0 + xi2).powf(-spec.decay / 2.0);
            let index = grid.mode_index(k1, k2).expect("mode below Nyquist");
            spectrum[index] = C64::from_polar(magnitude, theta);
        }
    }
    ComplexField::from_spectrum(grid, spectrum).expect("length matches")
}

pub fn random_pair(grid: Grid, spec: &FieldSpec, rng: &mut impl Rng) -> FieldPair {
    let first = random_scalar(grid, spec, rng);
    FieldPair::new(first, random_scalar(grid, spec, rng))
}

pub fn random_map(grid: Grid, spec: &FieldSpec, rng: &mut impl Rng) -> ProjectedMap {
    let z = random_scalar(grid, spec, rng);
    let norm: f64 = z.spectrum().iter().map(|c| c.norm()).sum();
    if norm == 0.0 {
        return ProjectedMap::new(z);
    }
    ProjectedMap::new(z.scale_real(spec.amplitude / norm))
}

pub fn random_real_vector(grid: Grid, spec: &FieldSpec, rng: &mut impl Rng) -> (ComplexField, ComplexField) {
    let first = random_scalar(grid, spec, rng).re();
    (first, random_scalar(grid, spec, rng).re())
}

/// The fields of one draw, flattened: one field for `Scalar` and `Map`, two
/// for `Pair` and `RealVector`.
pub fn random_field(grid: Grid, spec: &FieldSpec, kind: FieldKind, seed: u64, stream: u64) -> Vec<ComplexField> {
    let rng = &mut rng_for(seed, stream);
    match kind {
        FieldKind::Scalar => vec![random_scalar(grid, spec, rng)],
        FieldKind::Pair => {
            let p = random_pair(grid, spec, rng);
            vec![p.first, p.second]
        }
        FieldKind::Map => vec![random_map(grid, spec, rng).z],
        FieldKind::RealVector => {
            let (a, b) = random_real_vector(grid, spec, rng);
            vec![a, b]
        }
    }
}
