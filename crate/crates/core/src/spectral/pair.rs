use super::{ComplexField, Grid, C64};

/// Ordered pair of fields on a common grid, e.g. `u = (u₁, u₂)`.
#[derive(Debug, Clone)]
pub struct FieldPair {
    pub first: ComplexField,
    pub second: ComplexField,
}

impl FieldPair {
    pub fn new(first: ComplexField, second: ComplexField) -> FieldPair {
        assert_eq!(first.grid(), second.grid(), "pair components on different grids");
        FieldPair { first, second }
    }

    pub fn zeros(grid: Grid) -> FieldPair {
        FieldPair::new(ComplexField::zeros(grid), ComplexField::zeros(grid))
    }

    pub fn grid(&self) -> Grid {
        self.first.grid()
    }

    /// Component `j ∈ {1, 2}`.
    pub fn component(&self, j: usize) -> &ComplexField {
        match j {
            1 => &self.first,
            2 => &self.second,
            _ => panic!("pair component index must be 1 or 2, got {j}"),
        }
    }

    pub fn map(&self, f: impl Fn(&ComplexField) -> ComplexField) -> FieldPair {
        FieldPair::new(f(&self.first), f(&self.second))
    }

    pub fn zip_map(
        &self,
        other: &FieldPair,
        f: impl Fn(&ComplexField, &ComplexField) -> ComplexField,
    ) -> FieldPair {
        FieldPair::new(f(&self.first, &other.first), f(&self.second, &other.second))
    }

    pub fn add(&self, other: &FieldPair) -> FieldPair {
        self.zip_map(other, ComplexField::add)
    }

    pub fn sub(&self, other: &FieldPair) -> FieldPair {
        self.zip_map(other, ComplexField::sub)
    }

    pub fn scale(&self, factor: C64) -> FieldPair {
        self.map(|f| f.scale(factor))
    }

    pub fn add_scaled(&self, factor: C64, other: &FieldPair) -> FieldPair {
        self.zip_map(other, |a, b| a.add_scaled(factor, b))
    }

    /// `Σ_j ⟨self_j, other_j⟩`.
    pub fn inner(&self, other: &FieldPair) -> C64 {
        self.first.inner(&other.first) + self.second.inner(&other.second)
    }

    /// `max_j max_x |self_j − other_j|`.
    pub fn max_abs_diff(&self, other: &FieldPair) -> f64 {
        self.first
            .max_abs_diff(&other.first)
            .max(self.second.max_abs_diff(&other.second))
    }

    pub fn max_abs(&self) -> f64 {
        self.first.max_abs().max(self.second.max_abs())
    }

    pub fn is_zero(&self) -> bool {
        self.first.is_zero() && self.second.is_zero()
    }

    pub fn refine(&self) -> FieldPair {
        self.map(ComplexField::refine)
    }
}
