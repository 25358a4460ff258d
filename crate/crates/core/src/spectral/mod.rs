//! Periodic grids, complex fields and the spectral machinery built on them.
//!
//! Fields live on the torus `[0, length)²` sampled on an `n × n` grid. The
//! measure is normalised to total mass one, so the forward transform divides
//! by `n²` and a constant field has unit coefficient at the zero mode and
//! unit `L^p` norm for every `p`.

mod fft;
mod field;
mod grid;
mod multiplier;
mod norms;
mod pair;
mod product;
pub mod snapshot;

pub use fft::{forward_transform, inverse_transform};
pub(crate) use fft::{forward_in_place, inverse_in_place};
pub use field::ComplexField;
pub use grid::{Axis, Grid, Mode};
pub use multiplier::FourierMultiplier;
pub use norms::{coefficient_l2_norm, lp_norm, sobolev_norm};
pub use pair::FieldPair;
pub use product::{pointwise_product, PaddedField};

pub type C64 = num_complex::Complex64;

/// Spectral derivative `∂_{x_axis} f`.
pub fn derivative(f: &ComplexField, axis: Axis) -> ComplexField {
    FourierMultiplier::derivative(f.grid(), axis).apply(f)
}

/// Spectral Laplacian `∂₁² f + ∂₂² f` built from the same discrete symbol as
/// two applications of [`derivative`].
pub fn laplacian(f: &ComplexField) -> ComplexField {
    FourierMultiplier::laplacian(f.grid()).apply(f)
}

/// Solves `Δψ = f` with the mean of `ψ` fixed to zero.
pub fn inverse_laplacian(f: &ComplexField) -> ComplexField {
    FourierMultiplier::inverse_laplacian(f.grid()).apply(f)
}
