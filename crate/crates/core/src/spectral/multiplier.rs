use super::{Axis, ComplexField, Grid, Mode, C64};

/// Diagonal operator in Fourier space.
///
/// Symbols with a `|ξ|` or `|ξ|²` denominator are set to zero wherever the
/// odd wavevector vanishes, which includes the zero mode (mean-zero
/// convention) and the Nyquist corner.
#[derive(Debug, Clone)]
pub struct FourierMultiplier {
    grid: Grid,
    symbol: Vec<C64>,
    zero_mode_value: C64,
}

impl FourierMultiplier {
    /// Builds a multiplier from a symbol evaluated at every nonzero mode.
    pub fn from_symbol(
        grid: Grid,
        zero_mode_value: C64,
        symbol: impl Fn(&Mode) -> C64,
    ) -> FourierMultiplier {
        let symbol = grid
            .modes()
            .map(|mode| {
                if mode.is_zero() {
                    zero_mode_value
                } else {
                    symbol(&mode)
                }
            })
            .collect();
        FourierMultiplier {
            grid,
            symbol,
            zero_mode_value,
        }
    }

    pub fn identity(grid: Grid) -> FourierMultiplier {
        FourierMultiplier::from_symbol(grid, C64::new(1.0, 0.0), |_| C64::new(1.0, 0.0))
    }

    /// `∂_{x_axis}`, symbol `iξ_axis`.
    pub fn derivative(grid: Grid, axis: Axis) -> FourierMultiplier {
        FourierMultiplier::from_symbol(grid, C64::default(), |m| {
            C64::new(0.0, m.odd_component(axis))
        })
    }

    /// `∂₁² + ∂₂²`, symbol `−|ξ|²` in the odd wavevector.
    pub fn laplacian(grid: Grid) -> FourierMultiplier {
        FourierMultiplier::from_symbol(grid, C64::default(), |m| {
            C64::new(-m.odd_norm_sqr(), 0.0)
        })
    }

    /// `Δ⁻¹` on mean-zero fields.
    pub fn inverse_laplacian(grid: Grid) -> FourierMultiplier {
        FourierMultiplier::from_symbol(grid, C64::default(), |m| {
            let r2 = m.odd_norm_sqr();
            if r2 == 0.0 {
                C64::default()
            } else {
                C64::new(-1.0 / r2, 0.0)
            }
        })
    }

    /// Riesz transform `R_j`, symbol `iξ_j/|ξ|`.
    pub fn riesz(grid: Grid, axis: Axis) -> FourierMultiplier {
        FourierMultiplier::from_symbol(grid, C64::default(), |m| {
            let r2 = m.odd_norm_sqr();
            if r2 == 0.0 {
                C64::default()
            } else {
                C64::new(0.0, m.odd_component(axis) / r2.sqrt())
            }
        })
    }

    /// Bessel potential `(1 + |ξ|²)^{s/2}`.
    pub fn bessel(grid: Grid, s: f64) -> FourierMultiplier {
        FourierMultiplier::from_symbol(grid, C64::new(1.0, 0.0), |m| {
            C64::new((1.0 + m.norm_sqr()).powf(s / 2.0), 0.0)
        })
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn symbol(&self) -> &[C64] {
        &self.symbol
    }

    pub fn zero_mode_value(&self) -> C64 {
        self.zero_mode_value
    }

    pub fn apply(&self, f: &ComplexField) -> ComplexField {
        assert_eq!(self.grid, f.grid(), "multiplier and field grids differ");
        f.map_spectrum(|index, c| self.symbol[index] * c)
    }

    /// Multiplier whose symbol is the product of both symbols.
    pub fn compose(&self, other: &FourierMultiplier) -> FourierMultiplier {
        assert_eq!(self.grid, other.grid, "multiplier grids differ");
        FourierMultiplier {
            grid: self.grid,
            symbol: self
                .symbol
                .iter()
                .zip(&other.symbol)
                .map(|(a, b)| a * b)
                .collect(),
            zero_mode_value: self.zero_mode_value * other.zero_mode_value,
        }
    }

    pub fn scaled(&self, factor: C64) -> FourierMultiplier {
        FourierMultiplier {
            grid: self.grid,
            symbol: self.symbol.iter().map(|s| s * factor).collect(),
            zero_mode_value: self.zero_mode_value * factor,
        }
    }
}
