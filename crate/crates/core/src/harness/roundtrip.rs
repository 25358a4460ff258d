//! Map-to-field pipeline residuals for a configured or stored map `z`.

use serde::Serialize;

use super::config::ExperimentConfig;
use super::random::{random_map, rng_for};
use crate::error::{Error, Result};
use crate::spectral::snapshot;
use crate::transform::{ProjectedMap, RoundtripResiduals};

/// Pass thresholds for [`RoundtripResiduals::residuals`], in the same order.
pub const ROUNDTRIP_TOLERANCES: [f64; 4] = [1e-11, 1e-8, 1e-8, 1e-6];

/// Residuals below this are treated as round-off rather than discretisation error.
pub const DISCRETISATION_FLOOR: f64 = 1e-10;

#[derive(Debug, Clone, Serialize)]
pub struct RefinementLevel {
    pub n: usize,
    #[serde(flatten)]
    pub residuals: RoundtripResiduals,
}

#[derive(Debug, Clone, Serialize)]
pub struct RoundtripReport {
    pub config_hash: String,
    pub source: String,
    pub n: usize,
    #[serde(flatten)]
    pub residuals: RoundtripResiduals,
    /// The same map on the doubled and quadrupled grid.
    pub refinement: Vec<RefinementLevel>,
    /// Smallest improvement factor per doubling over the discretisation-limited residuals.
    pub refinement_factor: f64,
}

impl RoundtripReport {
    pub fn within_tolerance(&self) -> bool {
        self.residuals
            .residuals()
            .iter()
            .zip(ROUNDTRIP_TOLERANCES)
            .all(|((_, r), tol)| *r < tol)
    }

    /// Whether every discretisation-limited residual at least halves per doubling.
    pub fn refines(&self) -> bool {
        self.refinement_factor >= 2.0
    }
}

/// Smallest `coarse / fine` ratio over residuals whose coarse value is above
/// [`DISCRETISATION_FLOOR`]; infinite when none are.
pub fn refinement_factor(levels: &[RoundtripResiduals]) -> f64 {
    let mut factor = f64::INFINITY;
    for pair in levels.windows(2) {
        for ((_, coarse), (_, fine)) in pair[0].residuals().iter().zip(pair[1].residuals().iter()) {
            if *coarse > DISCRETISATION_FLOOR {
                factor = factor.min(coarse / fine.max(f64::MIN_POSITIVE));
            }
        }
    }
    factor
}

/// Loads `z` from the configured snapshot (first field) or draws a random map
/// from stream 0 of the ensemble seed.
pub fn roundtrip_map(config: &ExperimentConfig) -> Result<(ProjectedMap, String)> {
    match &config.experiment.snapshot {
        Some(path) => {
            let fields = snapshot::load(path)?;
            let z = fields
                .into_iter()
                .next()
                .ok_or_else(|| Error::Snapshot(format!("{} holds no fields", path.display())))?;
            Ok((ProjectedMap::new(z), path.display().to_string()))
        }
        None => {
            let map = random_map(config.grid(), &config.field_spec(), &mut rng_for(config.ensemble.seed, 0));
            Ok((map, "random".to_string()))
        }
    }
}

pub fn run_gauge_roundtrip(config: &ExperimentConfig) -> Result<RoundtripReport> {
    let (map, source) = roundtrip_map(config)?;
    let n = map.z.grid().n();
    let mut levels = vec![RoundtripResiduals::compute(&map)];
    let mut z = map.z;
    let mut refinement = Vec::new();
    for _ in 0..2 {
        z = z.refine();
        let residuals = RoundtripResiduals::compute(&ProjectedMap::new(z.clone()));
        levels.push(residuals);
        refinement.push(RefinementLevel {
            n: z.grid().n(),
            residuals,
        });
    }
    Ok(RoundtripReport {
        config_hash: config.hash(),
        source,
        n,
        residuals: levels[0],
        refinement,
        refinement_factor: refinement_factor(&levels),
    })
}
