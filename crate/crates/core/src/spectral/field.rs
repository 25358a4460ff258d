use std::fmt;
use std::sync::OnceLock;

use super::fft::{forward_in_place, inverse_in_place};
use super::{Grid, C64};
use crate::error::{Error, Result};

/// Complex scalar field on a periodic grid.
///
/// Samples are the primary representation; the spectral coefficients are
/// computed on first use and cached. Fields are immutable once built.
#[derive(Clone)]
pub struct ComplexField {
    grid: Grid,
    samples: Vec<C64>,
    spectrum: OnceLock<Vec<C64>>,
}

impl fmt::Debug for ComplexField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ComplexField")
            .field("grid", &self.grid)
            .field("max_abs", &self.max_abs())
            .finish()
    }
}

impl ComplexField {
    pub fn zeros(grid: Grid) -> ComplexField {
        ComplexField::constant(grid, C64::new(0.0, 0.0))
    }

    pub fn constant(grid: Grid, value: C64) -> ComplexField {
        let mut spectrum = vec![C64::default(); grid.len()];
        spectrum[0] = value;
        ComplexField {
            grid,
            samples: vec![value; grid.len()],
            spectrum: OnceLock::from(spectrum),
        }
    }

    pub fn from_samples(grid: Grid, samples: Vec<C64>) -> Result<ComplexField> {
        if samples.len() != grid.len() {
            return Err(Error::BufferLength {
                expected: grid.len(),
                got: samples.len(),
            });
        }
        Ok(ComplexField {
            grid,
            samples,
            spectrum: OnceLock::new(),
        })
    }

    pub fn from_spectrum(grid: Grid, spectrum: Vec<C64>) -> Result<ComplexField> {
        if spectrum.len() != grid.len() {
            return Err(Error::BufferLength {
                expected: grid.len(),
                got: spectrum.len(),
            });
        }
        let mut samples = spectrum.clone();
        inverse_in_place(&mut samples, grid.n());
        Ok(ComplexField {
            grid,
            samples,
            spectrum: OnceLock::from(spectrum),
        })
    }

    /// Samples `f(x₁, x₂)` at every grid point.
    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64) -> C64) -> ComplexField {
        let samples = (0..grid.len())
            .map(|index| {
                let (x1, x2) = grid.point(index);
                f(x1, x2)
            })
            .collect();
        ComplexField {
            grid,
            samples,
            spectrum: OnceLock::new(),
        }
    }

    pub fn from_real_fn(grid: Grid, f: impl Fn(f64, f64) -> f64) -> ComplexField {
        ComplexField::from_fn(grid, |x1, x2| C64::new(f(x1, x2), 0.0))
    }

    /// Plane wave `e^{i(k₁x₁ + k₂x₂)·2π/length}` with integer wavenumbers.
    pub fn plane_wave(grid: Grid, k1: i64, k2: i64) -> ComplexField {
        let base = grid.fundamental();
        ComplexField::from_fn(grid, |x1, x2| {
            C64::from_polar(1.0, base * (k1 as f64 * x1 + k2 as f64 * x2))
        })
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn samples(&self) -> &[C64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<C64> {
        self.samples
    }

    /// Spectral coefficients, computed once and cached.
    pub fn spectrum(&self) -> &[C64] {
        self.spectrum.get_or_init(|| {
            let mut data = self.samples.clone();
            forward_in_place(&mut data, self.grid.n());
            data
        })
    }

    /// Pointwise map on samples. Not band-limited in general; nonlinear maps
    /// act on the grid values.
    pub fn map(&self, f: impl Fn(C64) -> C64) -> ComplexField {
        ComplexField {
            grid: self.grid,
            samples: self.samples.iter().map(|&c| f(c)).collect(),
            spectrum: OnceLock::new(),
        }
    }

    pub fn zip_map(&self, other: &ComplexField, f: impl Fn(C64, C64) -> C64) -> ComplexField {
        assert_eq!(self.grid, other.grid, "fields live on different grids");
        ComplexField {
            grid: self.grid,
            samples: self
                .samples
                .iter()
                .zip(&other.samples)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            spectrum: OnceLock::new(),
        }
    }

    /// Applies `f` to every spectral coefficient together with its mode.
    pub fn map_spectrum(&self, f: impl Fn(usize, C64) -> C64) -> ComplexField {
        let spectrum = self
            .spectrum()
            .iter()
            .enumerate()
            .map(|(index, &c)| f(index, c))
            .collect();
        ComplexField::from_spectrum(self.grid, spectrum).expect("length preserved")
    }

    pub fn conj(&self) -> ComplexField {
        self.map(|c| c.conj())
    }

    /// Real part as a field with zero imaginary part.
    pub fn re(&self) -> ComplexField {
        self.map(|c| C64::new(c.re, 0.0))
    }

    /// Imaginary part as a field with zero imaginary part.
    pub fn im(&self) -> ComplexField {
        self.map(|c| C64::new(c.im, 0.0))
    }

    pub fn add(&self, other: &ComplexField) -> ComplexField {
        self.zip_map(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ComplexField) -> ComplexField {
        self.zip_map(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: C64) -> ComplexField {
        self.map(|c| c * factor)
    }

    pub fn scale_real(&self, factor: f64) -> ComplexField {
        self.map(|c| c * factor)
    }

    /// `self + factor · other`.
    pub fn add_scaled(&self, factor: C64, other: &ComplexField) -> ComplexField {
        self.zip_map(other, |a, b| a + factor * b)
    }

    /// Grid average, equal to the zero-mode coefficient.
    pub fn mean(&self) -> C64 {
        self.samples.iter().sum::<C64>() / self.grid.len() as f64
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_im(&self) -> f64 {
        self.samples.iter().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    /// `max |self − other|` over the grid.
    pub fn max_abs_diff(&self, other: &ComplexField) -> f64 {
        assert_eq!(self.grid, other.grid, "fields live on different grids");
        self.samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.samples.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    /// Normalised `L²` inner product `⟨self, other⟩ = mean(self · conj(other))`.
    pub fn inner(&self, other: &ComplexField) -> C64 {
        assert_eq!(self.grid, other.grid, "fields live on different grids");
        self.samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a * b.conj())
            .sum::<C64>()
            / self.grid.len() as f64
    }

    /// Same continuum trigonometric polynomial sampled on the refined grid.
    ///
    /// The Nyquist coefficients of the coarse grid are dropped.
    pub fn refine(&self) -> ComplexField {
        let fine = self.grid.refined();
        let mut spectrum = vec![C64::default(); fine.len()];
        let n = self.grid.n();
        for (index, &c) in self.spectrum().iter().enumerate() {
            let (i1, i2) = (index % n, index / n);
            if self.grid.is_nyquist(i1) || self.grid.is_nyquist(i2) {
                continue;
            }
            let k1 = self.grid.wavenumber_index(i1);
            let k2 = self.grid.wavenumber_index(i2);
            let target = fine.mode_index(k1, k2).expect("coarse mode fits");
            spectrum[target] = c;
        }
        ComplexField::from_spectrum(fine, spectrum).expect("length matches")
    }
}
