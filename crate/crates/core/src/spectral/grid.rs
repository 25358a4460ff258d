use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Coordinate axis of the torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X1,
    X2,
}

impl Axis {
    pub const BOTH: [Axis; 2] = [Axis::X1, Axis::X2];

    pub fn from_index(index: usize) -> Option<Axis> {
        match index {
            1 => Some(Axis::X1),
            2 => Some(Axis::X2),
            _ => None,
        }
    }
}

/// Uniform periodic `n × n` grid on `[0, length)²`.
///
/// Samples are stored row-major with `x₁` varying fastest: the sample at
/// `(i₁, i₂)` lives at `i₂ * n + i₁`. Spectral coefficients use the same
/// layout, with index `i` on an axis mapped to the integer wavenumber in
/// `(−n/2, n/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    n: usize,
    length: f64,
}

/// Wavevector data for one spectral index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    /// Integer wavenumbers `(k₁, k₂)`.
    pub k: [i64; 2],
    /// Physical wavevector `ξ = 2πk/length`.
    pub xi: [f64; 2],
    /// Wavevector used by odd symbols: components sitting on the Nyquist
    /// index are zeroed so that odd multipliers map real fields to real fields.
    pub odd: [f64; 2],
}

impl Mode {
    pub fn norm(&self) -> f64 {
        self.xi[0].hypot(self.xi[1])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.xi[0] * self.xi[0] + self.xi[1] * self.xi[1]
    }

    pub fn odd_norm_sqr(&self) -> f64 {
        self.odd[0] * self.odd[0] + self.odd[1] * self.odd[1]
    }

    pub fn is_zero(&self) -> bool {
        self.k == [0, 0]
    }

    pub fn component(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X1 => self.xi[0],
            Axis::X2 => self.xi[1],
        }
    }

    pub fn odd_component(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X1 => self.odd[0],
            Axis::X2 => self.odd[1],
        }
    }
}

impl Grid {
    pub const DEFAULT_LENGTH: f64 = 16.0 * PI;

    pub fn new(n: usize, length: f64) -> Result<Grid> {
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "points per axis must be a power of two >= 8, got {n}"
            )));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "period must be positive and finite, got {length}"
            )));
        }
        Ok(Grid { n, length })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Number of grid points, `n²`.
    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.n as f64
    }

    /// Smallest nonzero wavenumber magnitude, `2π/length`.
    pub fn fundamental(&self) -> f64 {
        2.0 * PI / self.length
    }

    /// Integer wavenumber for axis index `i`.
    pub fn wavenumber_index(&self, i: usize) -> i64 {
        let n = self.n as i64;
        let i = i as i64;
        if i <= n / 2 {
            i
        } else {
            i - n
        }
    }

    /// Axis index holding integer wavenumber `k`, if it is representable.
    pub fn axis_index(&self, k: i64) -> Option<usize> {
        let n = self.n as i64;
        if k > n / 2 || k <= -n / 2 {
            return None;
        }
        Some(k.rem_euclid(n) as usize)
    }

    /// Flat spectral index of the mode `(k₁, k₂)`.
    pub fn mode_index(&self, k1: i64, k2: i64) -> Option<usize> {
        Some(self.axis_index(k2)? * self.n + self.axis_index(k1)?)
    }

    pub fn is_nyquist(&self, i: usize) -> bool {
        i == self.n / 2
    }

    pub fn mode(&self, index: usize) -> Mode {
        let i1 = index % self.n;
        let i2 = index / self.n;
        let k = [self.wavenumber_index(i1), self.wavenumber_index(i2)];
        let base = self.fundamental();
        let xi = [k[0] as f64 * base, k[1] as f64 * base];
        let odd = [
            if self.is_nyquist(i1) { 0.0 } else { xi[0] },
            if self.is_nyquist(i2) { 0.0 } else { xi[1] },
        ];
        Mode { k, xi, odd }
    }

    pub fn modes(&self) -> impl Iterator<Item = Mode> + '_ {
        (0..self.len()).map(move |index| self.mode(index))
    }

    /// Physical coordinates of sample `index`.
    pub fn point(&self, index: usize) -> (f64, f64) {
        let h = self.spacing();
        ((index % self.n) as f64 * h, (index / self.n) as f64 * h)
    }

    /// Largest wavenumber magnitude on the grid (the Nyquist corner).
    pub fn max_wavenumber(&self) -> f64 {
        std::f64::consts::SQRT_2 * (self.n / 2) as f64 * self.fundamental()
    }

    /// Same torus sampled with twice as many points per axis.
    pub fn refined(&self) -> Grid {
        Grid {
            n: 2 * self.n,
            length: self.length,
        }
    }

    pub fn ensure_same(&self, other: &Grid) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GridMismatch {
                left: self.n,
                left_length: self.length,
                right: other.n,
                right_length: other.length,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert!(Grid::new(4, 1.0).is_err());
        assert!(Grid::new(12, 1.0).is_err());
        assert!(Grid::new(16, 0.0).is_err());
        assert!(Grid::new(16, f64::NAN).is_err());
        assert!(Grid::new(8, 1.0).is_ok());
    }

    #[test]
    fn wavenumbers_are_symmetric_range() {
        let grid = Grid::new(8, 2.0 * PI).unwrap();
        let ks: Vec<i64> = (0..8).map(|i| grid.wavenumber_index(i)).collect();
        assert_eq!(ks, vec![0, 1, 2, 3, 4, -3, -2, -1]);
        for k in -3..=4 {
            let i = grid.axis_index(k).unwrap();
            assert_eq!(grid.wavenumber_index(i), k);
        }
        assert!(grid.axis_index(-4).is_none());
        assert!(grid.axis_index(5).is_none());
    }

    #[test]
    fn nyquist_is_zeroed_in_odd_wavevector() {
        let grid = Grid::new(8, 2.0 * PI).unwrap();
        let m = grid.mode(grid.mode_index(4, 1).unwrap());
        assert_eq!(m.xi, [4.0, 1.0]);
        assert_eq!(m.odd, [0.0, 1.0]);
    }

    #[test]
    fn scaled_wavenumbers() {
        let grid = Grid::new(16, Grid::DEFAULT_LENGTH).unwrap();
        let m = grid.mode(grid.mode_index(1, -2).unwrap());
        assert!((m.xi[0] - 0.125).abs() < 1e-15);
        assert!((m.xi[1] + 0.25).abs() < 1e-15);
    }
}
