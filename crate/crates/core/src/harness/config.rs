//! Experiment configuration: flat `key = value` lines grouped in `[grid]`,
//! `[time]`, `[ensemble]` and `[experiment]` sections. `#` starts a comment,
//! string values may be quoted, lists are comma separated. Unknown sections
//! and keys are errors.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::random::FieldSpec;
use crate::error::{Error, Result};
use crate::evolution::Sampling;
use crate::spectral::Grid;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridConfig {
    pub n: usize,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimeConfig {
    pub dt: f64,
    pub horizon: f64,
    /// Norm sampling stride in steps.
    pub stride: usize,
    pub snapshot_stride: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleConfig {
    pub count: usize,
    pub seed: u64,
    pub amplitude: f64,
    /// Spectral decay exponent; `1 + s` when absent.
    pub decay: Option<f64>,
    pub max_mode: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentParams {
    pub id: String,
    pub s: f64,
    pub q: f64,
    pub epsilon: f64,
    pub deltas: Vec<f64>,
    pub draws: usize,
    /// Optional snapshot holding a map `z` for the gauge roundtrip.
    pub snapshot: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub grid: GridConfig,
    pub time: TimeConfig,
    pub ensemble: EnsembleConfig,
    pub experiment: ExperimentParams,
}

impl Default for ExperimentConfig {
    fn default() -> ExperimentConfig {
        ExperimentConfig {
            grid: GridConfig {
                n: 64,
                length: Grid::DEFAULT_LENGTH,
            },
            time: TimeConfig {
                dt: 1e-3,
                horizon: 1.0,
                stride: 10,
                snapshot_stride: None,
            },
            ensemble: EnsembleConfig {
                count: 200,
                seed: 7,
                amplitude: 0.02,
                decay: None,
                max_mode: 16.0,
            },
            experiment: ExperimentParams {
                id: "default".to_string(),
                s: 1.0,
                q: 6.0,
                epsilon: 0.05,
                deltas: vec![1e-3, 1e-4, 1e-5],
                draws: 5,
                snapshot: None,
            },
        }
    }
}

fn parse_value<T: FromStr>(raw: &str, key: &str) -> std::result::Result<T, String> {
    raw.parse()
        .map_err(|_| format!("cannot parse value {raw:?} for key {key}"))
}

impl ExperimentConfig {
    /// Parses configuration text; `path` is only used in error messages.
    pub fn parse(text: &str, path: &Path) -> Result<ExperimentConfig> {
        let mut config = ExperimentConfig::default();
        let mut section: Option<String> = None;
        for (number, raw) in text.lines().enumerate() {
            let line_no = number + 1;
            let err = |message: String| Error::Config {
                path: path.to_path_buf(),
                line: line_no,
                message,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                let name = name.trim();
                if !["grid", "time", "ensemble", "experiment"].contains(&name) {
                    return Err(err(format!("unknown section [{name}]")));
                }
                section = Some(name.to_string());
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key = value, got {line:?}")))?;
            let key = key.trim();
            let value = value.trim().trim_matches('"');
            let section = section
                .as_deref()
                .ok_or_else(|| err(format!("key {key} outside of a section")))?;
            config.set(section, key, value).map_err(err)?;
        }
        config.validate(path)?;
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<ExperimentConfig> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        ExperimentConfig::parse(&text, path)
    }

    fn set(&mut self, section: &str, key: &str, value: &str) -> std::result::Result<(), String> {
        match (section, key) {
            ("grid", "n") => self.grid.n = parse_value(value, key)?,
            ("grid", "length") => self.grid.length = parse_value(value, key)?,
            ("time", "dt") => self.time.dt = parse_value(value, key)?,
            ("time", "horizon") => self.time.horizon = parse_value(value, key)?,
            ("time", "stride") => self.time.stride = parse_value(value, key)?,
            ("time", "snapshot_stride") => self.time.snapshot_stride = Some(parse_value(value, key)?),
            ("ensemble", "count") => self.ensemble.count = parse_value(value, key)?,
            ("ensemble", "seed") => self.ensemble.seed = parse_value(value, key)?,
            ("ensemble", "amplitude") => self.ensemble.amplitude = parse_value(value, key)?,
            ("ensemble", "decay") => self.ensemble.decay = Some(parse_value(value, key)?),
            ("ensemble", "max_mode") => self.ensemble.max_mode = parse_value(value, key)?,
            ("experiment", "id") => self.experiment.id = value.to_string(),
            ("experiment", "s") => self.experiment.s = parse_value(value, key)?,
            ("experiment", "q") => self.experiment.q = parse_value(value, key)?,
            ("experiment", "epsilon") => self.experiment.epsilon = parse_value(value, key)?,
            ("experiment", "deltas") => {
                self.experiment.deltas = value
                    .split(',')
                    .map(|v| parse_value(v.trim(), key))
                    .collect::<std::result::Result<_, _>>()?
            }
            ("experiment", "draws") => self.experiment.draws = parse_value(value, key)?,
            ("experiment", "snapshot") => self.experiment.snapshot = Some(PathBuf::from(value)),
            _ => return Err(format!("unknown key {key} in [{section}]")),
        }
        Ok(())
    }

    /// Checks the parameter constraints; `path` labels the error.
    pub fn validate(&self, path: &Path) -> Result<()> {
        let err = |message: String| Error::Config {
            path: path.to_path_buf(),
            line: 0,
            message,
        };
        Grid::new(self.grid.n, self.grid.length).map_err(|e| err(e.to_string()))?;
        if !(self.experiment.q > 4.0) {
            return Err(err(format!("q must exceed 4, got {}", self.experiment.q)));
        }
        if !(self.time.dt.is_finite() && self.time.dt != 0.0) {
            return Err(err(format!("dt must be finite and nonzero, got {}", self.time.dt)));
        }
        if !(self.time.horizon > 0.0) || self.time.stride == 0 {
            return Err(err("horizon and stride must be positive".to_string()));
        }
        if !(self.ensemble.amplitude >= 0.0) || !(self.ensemble.max_mode >= 0.0) {
            return Err(err("amplitude and max_mode must be nonnegative".to_string()));
        }
        if !(self.experiment.epsilon > 0.0) {
            return Err(err("epsilon must be positive".to_string()));
        }
        if self.experiment.deltas.iter().any(|d| !(*d >= 0.0)) {
            return Err(err("deltas must be nonnegative".to_string()));
        }
        Ok(())
    }

    /// Whether `s > 3/4`, the regularity range of the uniqueness theorem.
    pub fn in_theorem_range(&self) -> bool {
        self.experiment.s > 0.75
    }

    pub fn grid(&self) -> Grid {
        Grid::new(self.grid.n, self.grid.length).expect("validated grid")
    }

    pub fn field_spec(&self) -> FieldSpec {
        FieldSpec {
            amplitude: self.ensemble.amplitude,
            decay: self.ensemble.decay.unwrap_or(1.0 + self.experiment.s),
            max_mode: self.ensemble.max_mode,
        }
    }

    pub fn n_steps(&self) -> usize {
        (self.time.horizon / self.time.dt.abs()).round() as usize
    }

    pub fn sampling(&self) -> Sampling {
        Sampling {
            stride: self.time.stride,
            snapshot_stride: self.time.snapshot_stride,
            s: self.experiment.s,
            q: self.experiment.q,
        }
    }

    /// SHA-256 of the canonical JSON form, in hex.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("config serialises");
        Sha256::digest(&json)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}
