//! The time-integrated interpolation chain on a trajectory:
//! `∫ ‖u‖^p_{B^{s−1/p−ε}_{q,2}} ≤ sup_t ‖u‖^{p−2}_{B^{s−ε}_{2,2}} ∫ ‖u‖²_{B^{s−1/2−ε}_{∞,2}}`
//! with `q = 2p/(p − 2)`, together with the pointwise bound
//! `‖u‖_{B^{s−1/p−ε}_{q,2}} ≤ ‖u‖^{1−2/p}_{B^{s−ε}_{2,2}} ‖u‖^{2/p}_{B^{s−1/2−ε}_{∞,2}}`
//! at every snapshot.

use super::config::ExperimentConfig;
use super::random::{random_pair, rng_for};
use super::report::{RatioAccumulator, RatioReport};
use crate::error::{Error, Result};
use crate::evolution::{evolve_msm, MsmState, TrajectoryRecord};
use crate::littlewood_paley::DyadicPartition;
use crate::spectral::ComplexField;

pub const EMBEDDING_ID: &str = "embedding_chain";

/// Time exponent `p = 2q/(q − 2)` paired with integrability `q`.
pub fn time_exponent(q: f64) -> f64 {
    2.0 * q / (q - 2.0)
}

/// Pointwise `(lhs, rhs)` of the chain for a set of fields (norms combined as
/// root sums of squares).
pub fn chain_sides(partition: &DyadicPartition, fields: &[ComplexField], s: f64, epsilon: f64, q: f64) -> [f64; 3] {
    let p = time_exponent(q);
    let rss = |f: &dyn Fn(&ComplexField) -> f64| fields.iter().map(|x| f(x).powi(2)).sum::<f64>().sqrt();
    [
        rss(&|x| partition.besov_norm(x, s - 1.0 / p - epsilon, q, 2.0)),
        rss(&|x| partition.besov_norm(x, s - epsilon, 2.0, 2.0)),
        rss(&|x| partition.besov_norm(x, s - 0.5 - epsilon, f64::INFINITY, 2.0)),
    ]
}

/// Evaluates the chain on the snapshots of `record`. The pointwise ratios come
/// first; the last pushed ratio is the time-integrated one (trapezoid rule).
pub fn embedding_report(record: &TrajectoryRecord, s: f64, epsilon: f64, q: f64, seed: u64) -> Result<RatioReport> {
    if record.snapshots.is_empty() {
        return Err(Error::MissingNorms("no snapshots; set a snapshot stride".into()));
    }
    if !(q > 2.0) {
        return Err(Error::InvalidParameter(format!("q must exceed 2, got {q}")));
    }
    let grid = record.snapshots[0].fields[0].grid();
    let partition = DyadicPartition::new(grid);
    let p = time_exponent(q);
    let theta = 2.0 / p;
    let mut acc = RatioAccumulator::new(EMBEDDING_ID, q, seed);
    let sides: Vec<(f64, [f64; 3])> = record
        .snapshots
        .iter()
        .map(|snap| (snap.t, chain_sides(&partition, &snap.fields, s, epsilon, q)))
        .collect();
    for (_, [a, b, c]) in &sides {
        acc.push(*a, b.powf(1.0 - theta) * c.powf(theta));
    }
    let (mut lhs, mut rhs_integral, mut sup_b) = (0.0, 0.0, 0.0f64);
    for w in sides.windows(2) {
        let h = 0.5 * (w[1].0 - w[0].0).abs();
        lhs += h * (w[0].1[0].powf(p) + w[1].1[0].powf(p));
        rhs_integral += h * (w[0].1[2].powi(2) + w[1].1[2].powi(2));
    }
    for (_, [_, b, _]) in &sides {
        sup_b = sup_b.max(*b);
    }
    if sides.len() == 1 {
        let [a, b, c] = sides[0].1;
        lhs = a.powf(p);
        rhs_integral = c * c;
        sup_b = b;
    }
    acc.push(lhs, sup_b.powf(p - 2.0) * rhs_integral);
    Ok(acc.finish())
}

/// Evolves a random pair (stream 0) with a snapshot every sampling stride and
/// reports the chain on the trajectory.
pub fn run_embedding(config: &ExperimentConfig) -> Result<(TrajectoryRecord, RatioReport)> {
    let grid = config.grid();
    let u0 = random_pair(grid, &config.field_spec(), &mut rng_for(config.ensemble.seed, 0));
    let mut sampling = config.sampling();
    sampling.snapshot_stride.get_or_insert(config.time.stride);
    let record = evolve_msm(&MsmState::new(u0), config.time.dt, config.n_steps(), sampling).completed()?;
    let e = &config.experiment;
    let mut report = embedding_report(&record, e.s, e.epsilon, e.q, config.ensemble.seed)?;
    report.config_hash = Some(config.hash());
    Ok((record, report))
}
