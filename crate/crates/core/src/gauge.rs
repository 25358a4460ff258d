//! Coulomb-gauge potentials of the gauged system.
//!
//! For field pairs `u, v` the bilinear potentials are
//!
//! ```text
//! A₁[u,v] = 2 G₁ ∗ m,   A₂[u,v] = 2 G₂ ∗ m,   m = Im(ū₁v₂ + v̄₁u₂)
//! A₀[u,v] = 2 Σ_{j,k} R_j R_k Re(u_j v̄_k + v_j ū_k) + 2 Re(u₁v̄₁ + v̄₂u₂)
//! ```
//!
//! with `G₁ = ∂₂Γ`, `G₂ = −∂₁Γ` for the Newtonian potential `Γ`. On the torus
//! the convolutions are the multipliers `−iξ₂/|ξ|²` and `iξ₁/|ξ|²`, and the
//! Riesz transforms are `iξ_j/|ξ|`, all vanishing at the zero mode. The sign
//! of `m` is the one for which `∂₁A₂ − ∂₂A₁ = −4 Im(ū₁u₂)`, which is what the
//! potential built from a map `z` satisfies (see [`crate::transform`]).
//!
//! On the whole plane the kernel has `G₁((0, 1)) = 1/(2π)`; only the
//! multiplier form is implemented here.

use crate::error::Result;
use crate::harness::report::{RatioAccumulator, RatioReport};
use crate::littlewood_paley::DyadicPartition;
use crate::spectral::{
    derivative, lp_norm, sobolev_norm, Axis, ComplexField, FieldPair, FourierMultiplier, Grid,
    PaddedField, C64,
};

/// Riesz transform `R_j f`.
pub fn riesz(f: &ComplexField, axis: Axis) -> ComplexField {
    FourierMultiplier::riesz(f.grid(), axis).apply(f)
}

/// The vector potential `A = (A₁, A₂)`.
#[derive(Debug, Clone)]
pub struct VectorPotential {
    pub a1: ComplexField,
    pub a2: ComplexField,
}

/// The triple `(A₁, A₂, A₀)`.
#[derive(Debug, Clone)]
pub struct GaugePotential {
    pub a: VectorPotential,
    pub a0: ComplexField,
}

impl VectorPotential {
    pub fn zeros(grid: Grid) -> VectorPotential {
        VectorPotential {
            a1: ComplexField::zeros(grid),
            a2: ComplexField::zeros(grid),
        }
    }

    pub fn grid(&self) -> Grid {
        self.a1.grid()
    }

    pub fn component(&self, axis: Axis) -> &ComplexField {
        match axis {
            Axis::X1 => &self.a1,
            Axis::X2 => &self.a2,
        }
    }

    pub fn add(&self, other: &VectorPotential) -> VectorPotential {
        VectorPotential {
            a1: self.a1.add(&other.a1),
            a2: self.a2.add(&other.a2),
        }
    }

    pub fn sub(&self, other: &VectorPotential) -> VectorPotential {
        VectorPotential {
            a1: self.a1.sub(&other.a1),
            a2: self.a2.sub(&other.a2),
        }
    }

    pub fn scale(&self, factor: f64) -> VectorPotential {
        VectorPotential {
            a1: self.a1.scale_real(factor),
            a2: self.a2.scale_real(factor),
        }
    }

    /// `max_x |A(x)|` with the Euclidean length of the vector.
    pub fn max_abs(&self) -> f64 {
        self.a1
            .samples()
            .iter()
            .zip(self.a2.samples())
            .map(|(a, b)| (a.norm_sqr() + b.norm_sqr()).sqrt())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &VectorPotential) -> f64 {
        self.sub(other).max_abs()
    }

    /// `‖A‖_{L²}` of the vector field.
    pub fn l2_norm(&self) -> f64 {
        (lp_norm(&self.a1, 2.0).powi(2) + lp_norm(&self.a2, 2.0).powi(2)).sqrt()
    }

    pub fn max_abs_im(&self) -> f64 {
        self.a1.max_abs_im().max(self.a2.max_abs_im())
    }

    /// Spatial averages of the two components.
    pub fn mean(&self) -> [C64; 2] {
        [self.a1.mean(), self.a2.mean()]
    }

    /// The potential with its constant part removed.
    pub fn mean_free(&self) -> VectorPotential {
        let [m1, m2] = self.mean();
        VectorPotential {
            a1: self.a1.map(|c| c - m1),
            a2: self.a2.map(|c| c - m2),
        }
    }

    pub fn divergence(&self) -> ComplexField {
        derivative(&self.a1, Axis::X1).add(&derivative(&self.a2, Axis::X2))
    }

    /// `∂₁A₂ − ∂₂A₁`.
    pub fn curl(&self) -> ComplexField {
        derivative(&self.a2, Axis::X1).sub(&derivative(&self.a1, Axis::X2))
    }

    /// Pointwise `A · A` as a dealiased product.
    pub fn dot_self(&self) -> ComplexField {
        let (p1, p2) = (self.a1.padded(), self.a2.padded());
        p1.mul(&p1).add(&p2.mul(&p2)).truncate()
    }

    /// Dealiased `A · B`.
    pub fn dot(&self, other: &VectorPotential) -> ComplexField {
        self.a1
            .padded()
            .mul(&other.a1.padded())
            .add(&self.a2.padded().mul(&other.a2.padded()))
            .truncate()
    }

    /// `max_x |∇A(x)|_{HS}`.
    pub fn gradient_sup(&self) -> f64 {
        let parts: Vec<ComplexField> = [&self.a1, &self.a2]
            .iter()
            .flat_map(|c| Axis::BOTH.map(|axis| derivative(c, axis)))
            .collect();
        (0..self.grid().len())
            .map(|i| parts.iter().map(|p| p.samples()[i].norm_sqr()).sum::<f64>().sqrt())
            .fold(0.0, f64::max)
    }
}

fn from_density(m: &ComplexField) -> VectorPotential {
    let grid = m.grid();
    let a1 = FourierMultiplier::from_symbol(grid, C64::default(), |mode| {
        let r2 = mode.odd_norm_sqr();
        if r2 == 0.0 {
            C64::default()
        } else {
            C64::new(0.0, -2.0 * mode.odd[1] / r2)
        }
    });
    let a2 = FourierMultiplier::from_symbol(grid, C64::default(), |mode| {
        let r2 = mode.odd_norm_sqr();
        if r2 == 0.0 {
            C64::default()
        } else {
            C64::new(0.0, 2.0 * mode.odd[0] / r2)
        }
    });
    VectorPotential {
        a1: a1.apply(m),
        a2: a2.apply(m),
    }
}

/// Padded components of a field pair, reused across several products.
pub struct PaddedPair {
    pub first: PaddedField,
    pub second: PaddedField,
}

impl PaddedPair {
    pub fn new(u: &FieldPair) -> PaddedPair {
        PaddedPair {
            first: u.first.padded(),
            second: u.second.padded(),
        }
    }

    pub fn component(&self, j: usize) -> &PaddedField {
        match j {
            1 => &self.first,
            2 => &self.second,
            _ => panic!("pair component index must be 1 or 2, got {j}"),
        }
    }
}

/// Density `m[u,v] = Im(ū₁v₂ + v̄₁u₂)` from padded inputs.
pub fn gauge_density(pu: &PaddedPair, pv: &PaddedPair) -> ComplexField {
    pv.second
        .mul_conj(&pu.first)
        .add(&pu.second.mul_conj(&pv.first))
        .im()
        .truncate()
}

pub fn compute_a_padded(pu: &PaddedPair, pv: &PaddedPair) -> VectorPotential {
    from_density(&gauge_density(pu, pv))
}

/// `A[u, v]`.
pub fn compute_a(u: &FieldPair, v: &FieldPair) -> VectorPotential {
    compute_a_padded(&PaddedPair::new(u), &PaddedPair::new(v))
}

/// `A₀[u, v]` from padded inputs.
pub fn compute_a0_padded(pu: &PaddedPair, pv: &PaddedPair) -> ComplexField {
    let grid = pu.first.grid();
    // d_jk = Re(u_j v̄_k + v_j ū_k), symmetric in (j, k)
    let d = |j: usize, k: usize| {
        pu.component(j)
            .mul_conj(pv.component(k))
            .add(&pv.component(j).mul_conj(pu.component(k)))
            .re()
            .truncate()
    };
    let (d11, d22, d12) = (d(1, 1), d(2, 2), d(1, 2));
    let (s11, s22, s12) = (d11.spectrum(), d22.spectrum(), d12.spectrum());
    // Σ_{jk} R_j R_k d_jk has symbol −(ξ₁²d₁₁ + 2ξ₁ξ₂d₁₂ + ξ₂²d₂₂)/|ξ|²
    let nonlocal: Vec<C64> = grid
        .modes()
        .enumerate()
        .map(|(i, mode)| {
            let r2 = mode.odd_norm_sqr();
            if r2 == 0.0 {
                return C64::default();
            }
            let [x1, x2] = mode.odd;
            -(x1 * x1 * s11[i] + 2.0 * x1 * x2 * s12[i] + x2 * x2 * s22[i]) / r2
        })
        .collect();
    let nonlocal = ComplexField::from_spectrum(grid, nonlocal).expect("length matches");
    // 2 Re(u₁v̄₁ + v̄₂u₂) = d₁₁ + d₂₂
    nonlocal.scale_real(2.0).add(&d11).add(&d22)
}

/// `A₀[u, v]`.
pub fn compute_a0(u: &FieldPair, v: &FieldPair) -> ComplexField {
    compute_a0_padded(&PaddedPair::new(u), &PaddedPair::new(v))
}

/// `A₀[u, u]` through the diagonal closed form
/// `4 Σ_{jk} R_j R_k Re(u_j ū_k) + 2|u|²`, applying the Riesz transforms one
/// at a time.
pub fn compute_a0_diagonal(u: &FieldPair) -> ComplexField {
    let pu = PaddedPair::new(u);
    let grid = u.grid();
    let mut total = ComplexField::zeros(grid);
    for (j, aj) in [(1, Axis::X1), (2, Axis::X2)] {
        for (k, ak) in [(1, Axis::X1), (2, Axis::X2)] {
            let density = pu.component(j).mul_conj(pu.component(k)).re().truncate();
            total = total.add(&riesz(&riesz(&density, ak), aj).scale_real(4.0));
        }
    }
    let mass = pu
        .first
        .mul_conj(&pu.first)
        .add(&pu.second.mul_conj(&pu.second))
        .re()
        .truncate();
    total.add(&mass.scale_real(2.0))
}

pub fn gauge_potential(u: &FieldPair, v: &FieldPair) -> GaugePotential {
    let (pu, pv) = (PaddedPair::new(u), PaddedPair::new(v));
    GaugePotential {
        a: compute_a_padded(&pu, &pv),
        a0: compute_a0_padded(&pu, &pv),
    }
}

/// `Im(ū₁u₂)` as a dealiased product.
pub fn curvature_density(u: &FieldPair) -> ComplexField {
    let pu = PaddedPair::new(u);
    pu.second.mul_conj(&pu.first).im().truncate()
}

/// `‖∂₁A₂ − ∂₂A₁ + 4(Im(ū₁u₂) − mean)‖_∞ / (1 + ‖Im(ū₁u₂)‖_∞)`.
///
/// A curl on the torus has zero mean, so the identity is checked against the
/// mean-free part of the density.
pub fn curvature_check(u: &FieldPair, a: &VectorPotential) -> Result<f64> {
    u.grid().ensure_same(&a.grid())?;
    let density = curvature_density(u);
    let mean = density.mean();
    let centered = density.map(|c| c - mean);
    let residual = a.curl().add(&centered.scale_real(4.0));
    Ok(residual.max_abs() / (1.0 + density.max_abs()))
}

/// `‖∇·A‖_∞ / max|∇A|`, zero for a constant potential.
pub fn divergence_check(a: &VectorPotential) -> f64 {
    let scale = a.gradient_sup();
    if scale == 0.0 {
        return 0.0;
    }
    a.divergence().max_abs() / scale
}

/// Root-sum-square combination of a norm over the two components.
pub fn pair_norm(u: &FieldPair, norm: impl Fn(&ComplexField) -> f64) -> f64 {
    norm(&u.first).hypot(norm(&u.second))
}

/// `A · ∇h` as a dealiased sum of products.
pub fn transport(a: &VectorPotential, h: &ComplexField) -> ComplexField {
    a.a1
        .padded()
        .mul(&derivative(h, Axis::X1).padded())
        .add(&a.a2.padded().mul(&derivative(h, Axis::X2).padded()))
        .truncate()
}

/// Left- and right-hand sides of the three gauge-field estimates for one
/// sample `(f, g, h)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeBoundSample {
    /// `‖∇A[f,g]‖_∞` vs `‖f‖_B ‖g‖_B + ‖f‖_{L²} ‖g‖_{L²}`.
    pub gradient: (f64, f64),
    /// `‖A[f,g]‖_{B^{1/2}_{q,2}}` vs the same right-hand side.
    pub besov: (f64, f64),
    /// `‖A[f,g]·∇h‖_{H^{−1/2}}` vs
    /// `(‖g‖_{H^{1/2}}‖h‖_{H^{1/2}} + ‖g‖_B‖h‖_B)‖f‖_{H^{−1/2}}`.
    pub transport: (f64, f64),
}

pub const GAUGE_INEQUALITIES: [&str; 3] = ["A_gradient", "A_besov", "A_transport"];

pub fn gauge_bound_sample(
    partition: &DyadicPartition,
    q: f64,
    f: &FieldPair,
    g: &FieldPair,
    h: &ComplexField,
) -> GaugeBoundSample {
    let besov = |x: &ComplexField| partition.besov_norm(x, 0.5, q, 2.0);
    let a = compute_a(f, g);
    let (fb, gb, hb) = (pair_norm(f, besov), pair_norm(g, besov), besov(h));
    let (f2, g2) = (pair_norm(f, |x| lp_norm(x, 2.0)), pair_norm(g, |x| lp_norm(x, 2.0)));
    let rhs_ag = fb * gb + f2 * g2;
    let a_besov = besov(&a.a1).hypot(besov(&a.a2));
    let lhs_t = sobolev_norm(&transport(&a, h), -0.5);
    let rhs_t = (pair_norm(g, |x| sobolev_norm(x, 0.5)) * sobolev_norm(h, 0.5) + gb * hb)
        * pair_norm(f, |x| sobolev_norm(x, -0.5));
    GaugeBoundSample {
        gradient: (a.gradient_sup(), rhs_ag),
        besov: (a_besov, rhs_ag),
        transport: (lhs_t, rhs_t),
    }
}

/// Empirical LHS/RHS statistics of the three gauge estimates.
pub fn survey_gauge_bounds(
    partition: &DyadicPartition,
    q: f64,
    samples: &[(FieldPair, FieldPair, ComplexField)],
    seed: u64,
) -> Result<Vec<RatioReport>> {
    use rayon::prelude::*;

    if samples.is_empty() {
        return Err(crate::error::Error::EmptySampleSet);
    }
    let values: Vec<GaugeBoundSample> = samples
        .par_iter()
        .map(|(f, g, h)| gauge_bound_sample(partition, q, f, g, h))
        .collect();
    let mut acc: Vec<RatioAccumulator> = GAUGE_INEQUALITIES
        .iter()
        .map(|id| RatioAccumulator::new(id, q, seed))
        .collect();
    for v in &values {
        acc[0].push(v.gradient.0, v.gradient.1);
        acc[1].push(v.besov.0, v.besov.1);
        acc[2].push(v.transport.0, v.transport.1);
    }
    Ok(acc.into_iter().map(RatioAccumulator::finish).collect())
}
