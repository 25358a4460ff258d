//! Ensemble surveys of the product and gauge-potential inequalities.

use rayon::prelude::*;

use super::config::ExperimentConfig;
use super::random::{random_pair, random_scalar, rng_for, FieldSpec};
use super::report::{RatioAccumulator, RatioReport};
use crate::error::{Error, Result};
use crate::gauge::{gauge_bound_sample, GAUGE_INEQUALITIES};
use crate::littlewood_paley::DyadicPartition;
use crate::spectral::{derivative, pointwise_product, sobolev_norm, Axis, ComplexField, FieldPair, Grid};

/// Product estimates surveyed alongside the gauge bounds.
pub const PRODUCT_INEQUALITIES: [&str; 5] = ["cal1", "cal2", "two", "cal3", "cal4"];

pub const MIN_ENSEMBLE: usize = 50;

/// `(lhs, rhs)` for each entry of [`PRODUCT_INEQUALITIES`].
pub fn product_bound_sample(partition: &DyadicPartition, q: f64, f: &ComplexField, g: &ComplexField) -> [(f64, f64); 5] {
    let besov = |x: &ComplexField| partition.besov_norm(x, 0.5, q, 2.0);
    let zero_inf_one = |x: &ComplexField| partition.besov_norm(x, 0.0, f64::INFINITY, 1.0);
    let fg = pointwise_product(f, g);
    let (fb, gb) = (besov(f), besov(g));
    let f_grad_g = Axis::BOTH
        .iter()
        .map(|&axis| sobolev_norm(&pointwise_product(f, &derivative(g, axis)), -0.5).powi(2))
        .sum::<f64>()
        .sqrt();
    let fgb = besov(&fg);
    [
        (sobolev_norm(&fg, 0.5), sobolev_norm(f, 0.5) * gb),
        (fgb, fb * gb),
        (fgb, fb * zero_inf_one(g) + zero_inf_one(f) * gb),
        (sobolev_norm(&fg, -0.5), sobolev_norm(f, -0.5) * gb),
        (f_grad_g, sobolev_norm(f, 0.5) * gb),
    ]
}

struct Draw {
    f: ComplexField,
    g: ComplexField,
    fp: FieldPair,
    gp: FieldPair,
}

fn draw(grid: Grid, spec: &FieldSpec, seed: u64, index: u64) -> Draw {
    let mut rng = rng_for(seed, index);
    Draw {
        f: random_scalar(grid, spec, &mut rng),
        g: random_scalar(grid, spec, &mut rng),
        fp: random_pair(grid, spec, &mut rng),
        gp: random_pair(grid, spec, &mut rng),
    }
}

/// Draws `ensemble.count` samples (sample `i` uses RNG stream `i`) and reports
/// the ratio statistics of every product and gauge inequality.
pub fn run_inequality_survey(config: &ExperimentConfig) -> Result<Vec<RatioReport>> {
    let count = config.ensemble.count;
    if count == 0 {
        return Err(Error::EmptySampleSet);
    }
    if count < MIN_ENSEMBLE {
        return Err(Error::InvalidParameter(format!(
            "ensemble needs at least {MIN_ENSEMBLE} samples, got {count}"
        )));
    }
    let grid = config.grid();
    let spec = config.field_spec();
    let (seed, q) = (config.ensemble.seed, config.experiment.q);
    let partition = DyadicPartition::new(grid);

    let values: Vec<([(f64, f64); 5], [(f64, f64); 3])> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let d = draw(grid, &spec, seed, i);
            let product = product_bound_sample(&partition, q, &d.f, &d.g);
            let gauge = gauge_bound_sample(&partition, q, &d.fp, &d.gp, &d.f);
            (product, [gauge.gradient, gauge.besov, gauge.transport])
        })
        .collect();

    let mut acc: Vec<RatioAccumulator> = PRODUCT_INEQUALITIES
        .iter()
        .chain(GAUGE_INEQUALITIES.iter())
        .map(|id| RatioAccumulator::new(id, q, seed))
        .collect();
    for (product, gauge) in &values {
        for (a, &(lhs, rhs)) in acc.iter_mut().zip(product.iter().chain(gauge.iter())) {
            a.push(lhs, rhs);
        }
    }
    let hash = config.hash();
    Ok(acc
        .into_iter()
        .map(|a| {
            let mut report = a.finish();
            report.config_hash = Some(hash.clone());
            report
        })
        .collect())
}

/// Norm table rows for the first few ensemble scalars, for inspection.
pub fn ensemble_norm_rows(config: &ExperimentConfig, count: usize) -> Vec<crate::littlewood_paley::NormRow> {
    let grid = config.grid();
    let spec = config.field_spec();
    let partition = DyadicPartition::new(grid);
    let q = config.experiment.q;
    let mut rows = Vec::new();
    for i in 0..count.min(config.ensemble.count) as u64 {
        let f = draw(grid, &spec, config.ensemble.seed, i).f;
        for (s, p, r) in [(0.5, q, 2.0), (0.5, 2.0, 2.0), (0.0, 2.0, 2.0), (0.0, f64::INFINITY, 1.0)] {
            rows.push(crate::littlewood_paley::NormRow {
                field_id: i as usize,
                s,
                p,
                q: r,
                value: partition.besov_norm(&f, s, p, r),
            });
        }
    }
    rows
}
