use super::fft::{forward_in_place, inverse_in_place};
use super::{ComplexField, Grid, C64};

/// A field resampled on the `2n × 2n` grid of the same torus.
///
/// Products of padded fields are exact samples of the product of the two
/// trigonometric interpolants, so truncating back to the `n × n` grid gives
/// an alias-free quadratic product. Nyquist coefficients are dropped both
/// when padding and when truncating, which keeps the truncation symmetric
/// (real fields stay real).
#[derive(Clone)]
pub struct PaddedField {
    grid: Grid,
    samples: Vec<C64>,
}

impl ComplexField {
    pub fn padded(&self) -> PaddedField {
        let grid = self.grid();
        let n = grid.n();
        let m = 2 * n;
        let mut data = vec![C64::default(); m * m];
        for (index, &c) in self.spectrum().iter().enumerate() {
            let (i1, i2) = (index % n, index / n);
            if grid.is_nyquist(i1) || grid.is_nyquist(i2) {
                continue;
            }
            let j1 = grid.wavenumber_index(i1).rem_euclid(m as i64) as usize;
            let j2 = grid.wavenumber_index(i2).rem_euclid(m as i64) as usize;
            data[j2 * m + j1] = c;
        }
        inverse_in_place(&mut data, m);
        PaddedField { grid, samples: data }
    }
}

impl PaddedField {
    /// Grid of the unpadded field.
    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn samples(&self) -> &[C64] {
        &self.samples
    }

    fn zip(&self, other: &PaddedField, f: impl Fn(C64, C64) -> C64) -> PaddedField {
        assert_eq!(self.grid, other.grid, "padded fields on different grids");
        PaddedField {
            grid: self.grid,
            samples: self
                .samples
                .iter()
                .zip(&other.samples)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    fn map(&self, f: impl Fn(C64) -> C64) -> PaddedField {
        PaddedField {
            grid: self.grid,
            samples: self.samples.iter().map(|&c| f(c)).collect(),
        }
    }

    pub fn mul(&self, other: &PaddedField) -> PaddedField {
        self.zip(other, |a, b| a * b)
    }

    /// `self · conj(other)`.
    pub fn mul_conj(&self, other: &PaddedField) -> PaddedField {
        self.zip(other, |a, b| a * b.conj())
    }

    pub fn add(&self, other: &PaddedField) -> PaddedField {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &PaddedField) -> PaddedField {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: C64) -> PaddedField {
        self.map(|c| c * factor)
    }

    pub fn conj(&self) -> PaddedField {
        self.map(|c| c.conj())
    }

    pub fn re(&self) -> PaddedField {
        self.map(|c| C64::new(c.re, 0.0))
    }

    pub fn im(&self) -> PaddedField {
        self.map(|c| C64::new(c.im, 0.0))
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Projects back onto the `n × n` grid, keeping modes with
    /// `|k_axis| < n/2` on both axes.
    pub fn truncate(&self) -> ComplexField {
        let n = self.grid.n();
        let m = 2 * n;
        let mut data = self.samples.clone();
        forward_in_place(&mut data, m);
        let mut spectrum = vec![C64::default(); n * n];
        let half = (n / 2) as i64;
        for k2 in -half + 1..half {
            for k1 in -half + 1..half {
                let src = k2.rem_euclid(m as i64) as usize * m + k1.rem_euclid(m as i64) as usize;
                let dst = self.grid.mode_index(k1, k2).expect("mode below Nyquist");
                spectrum[dst] = data[src];
            }
        }
        ComplexField::from_spectrum(self.grid, spectrum).expect("length matches")
    }
}

/// Dealiased product `P_n(f · g)` of two fields.
pub fn pointwise_product(f: &ComplexField, g: &ComplexField) -> ComplexField {
    f.padded().mul(&g.padded()).truncate()
}
