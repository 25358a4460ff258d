use super::{ComplexField, C64};

/// Discrete `L^p` norm under the normalised measure; `p = ∞` is the grid max.
pub fn lp_norm(f: &ComplexField, p: f64) -> f64 {
    lp_norm_of_samples(f.samples(), p)
}

pub(crate) fn lp_norm_of_samples(samples: &[C64], p: f64) -> f64 {
    assert!(p >= 1.0, "L^p norm needs p >= 1, got {p}");
    if p.is_infinite() {
        return samples.iter().map(|c| c.norm()).fold(0.0, f64::max);
    }
    let count = samples.len() as f64;
    if p == 2.0 {
        return (samples.iter().map(|c| c.norm_sqr()).sum::<f64>() / count).sqrt();
    }
    // scale by the max to keep large p well conditioned
    let max = samples.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return 0.0;
    }
    let mean = samples.iter().map(|c| (c.norm() / max).powf(p)).sum::<f64>() / count;
    max * mean.powf(1.0 / p)
}

/// `(Σ_k (1 + |ξ_k|²)^s |f̂(k)|²)^{1/2}`.
pub fn sobolev_norm(f: &ComplexField, s: f64) -> f64 {
    let grid = f.grid();
    f.spectrum()
        .iter()
        .zip(grid.modes())
        .map(|(c, m)| (1.0 + m.norm_sqr()).powf(s) * c.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// `ℓ²` norm of the spectral coefficients.
pub fn coefficient_l2_norm(f: &ComplexField) -> f64 {
    f.spectrum().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}
