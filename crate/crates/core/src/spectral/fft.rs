use std::cell::RefCell;
use std::sync::Arc;

use rustfft::{Fft, FftDirection, FftPlanner};

use super::{ComplexField, Grid, C64};
use crate::error::Result;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(n: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|planner| planner.borrow_mut().plan_fft(n, direction))
}

fn transpose_in_place(data: &mut [C64], n: usize) {
    const TILE: usize = 16;
    for r0 in (0..n).step_by(TILE) {
        for c0 in (r0..n).step_by(TILE) {
            for row in r0..(r0 + TILE).min(n) {
                let start = if c0 == r0 { row + 1 } else { c0 };
                for col in start..(c0 + TILE).min(n) {
                    data.swap(row * n + col, col * n + row);
                }
            }
        }
    }
}

fn transform_2d(data: &mut [C64], n: usize, direction: FftDirection) {
    debug_assert_eq!(data.len(), n * n);
    let fft = plan(n, direction);
    let mut scratch = vec![C64::default(); fft.get_inplace_scratch_len()];
    fft.process_with_scratch(data, &mut scratch);
    transpose_in_place(data, n);
    fft.process_with_scratch(data, &mut scratch);
    transpose_in_place(data, n);
}

/// In-place forward transform normalised by `1/n²`.
pub(crate) fn forward_in_place(data: &mut [C64], n: usize) {
    transform_2d(data, n, FftDirection::Forward);
    let scale = 1.0 / (n * n) as f64;
    for c in data.iter_mut() {
        *c *= scale;
    }
}

/// In-place unnormalised inverse transform (synthesis from coefficients).
pub(crate) fn inverse_in_place(data: &mut [C64], n: usize) {
    transform_2d(data, n, FftDirection::Inverse);
}

/// Spectral coefficients `f̂(k) = n⁻² Σ_x f(x) e^{−i k·x}` of `f`.
pub fn forward_transform(f: &ComplexField) -> Vec<C64> {
    f.spectrum().to_vec()
}

/// Field synthesised from spectral coefficients.
pub fn inverse_transform(grid: Grid, coefficients: Vec<C64>) -> Result<ComplexField> {
    ComplexField::from_spectrum(grid, coefficients)
}
