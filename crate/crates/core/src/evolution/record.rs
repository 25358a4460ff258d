use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::littlewood_paley::DyadicPartition;
use crate::spectral::{lp_norm, sobolev_norm, ComplexField, Grid};

/// Sobolev exponents recorded in every sample's ladder.
pub const SOBOLEV_LADDER: [f64; 5] = [-1.0, -0.5, 0.0, 0.5, 1.0];

/// Trajectories abort once any recorded norm exceeds this value.
pub const BLOW_UP_THRESHOLD: f64 = 1e8;

/// What to record along a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sampling {
    /// Record norms every `stride` steps (and at the final step).
    pub stride: usize,
    /// Keep full snapshots every this many steps.
    pub snapshot_stride: Option<usize>,
    /// Regularity of the `Hs` column.
    pub s: f64,
    /// Integrability of the `B^{1/2}_{q,2}` column.
    pub q: f64,
}

impl Default for Sampling {
    fn default() -> Sampling {
        Sampling {
            stride: 10,
            snapshot_stride: None,
            s: 1.0,
            q: 6.0,
        }
    }
}

/// Norms at one sampled time. For field pairs each norm is the root sum of
/// squares over the components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormSample {
    pub t: f64,
    pub l2: f64,
    pub hs: f64,
    pub h_minus_half: f64,
    pub besov_half: f64,
    /// `H^s` norms for `s` in [`SOBOLEV_LADDER`].
    pub ladder: [f64; 5],
}

impl NormSample {
    pub fn mass(&self) -> f64 {
        self.l2 * self.l2
    }

    /// The ladder entry for exponent `s`, if recorded.
    pub fn sobolev(&self, s: f64) -> Option<f64> {
        SOBOLEV_LADDER
            .iter()
            .position(|&x| x == s)
            .map(|i| self.ladder[i])
    }

    fn largest(&self) -> (&'static str, f64) {
        let mut worst = ("L2", self.l2);
        for (name, value) in [
            ("Hs", self.hs),
            ("Hminushalf", self.h_minus_half),
            ("Besov_half_q2", self.besov_half),
        ]
        .into_iter()
        .chain(self.ladder.iter().map(|&v| ("H^s ladder", v)))
        {
            if !value.is_finite() {
                return (name, value);
            }
            if value > worst.1 {
                worst = (name, value);
            }
        }
        worst
    }
}

#[derive(Debug, Clone)]
pub struct Snapshot {
    pub t: f64,
    pub fields: Vec<ComplexField>,
}

/// Where and why a trajectory stopped early.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlowUp {
    pub t: f64,
    pub norm: &'static str,
    pub value: f64,
}

impl From<BlowUp> for Error {
    fn from(b: BlowUp) -> Error {
        Error::BlowUp {
            t: b.t,
            norm: b.norm,
            value: b.value,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TrajectoryRecord {
    pub sampling: Sampling,
    pub samples: Vec<NormSample>,
    pub snapshots: Vec<Snapshot>,
    pub blow_up: Option<BlowUp>,
}

impl TrajectoryRecord {
    pub fn times(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }

    /// The record itself, or the blow-up as an error.
    pub fn completed(self) -> Result<TrajectoryRecord> {
        match self.blow_up {
            Some(b) => Err(b.into()),
            None => Ok(self),
        }
    }

    pub fn final_sample(&self) -> Option<&NormSample> {
        self.samples.last()
    }

    /// CSV with columns `t, L2, Hs, Hminushalf, Besov_half_q2`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(["t", "L2", "Hs", "Hminushalf", "Besov_half_q2"])?;
        for s in &self.samples {
            writer.write_record(
                [s.t, s.l2, s.hs, s.h_minus_half, s.besov_half].map(|v| v.to_string()),
            )?;
        }
        writer.flush()?;
        Ok(())
    }
}

/// Evaluates [`NormSample`]s and accumulates a [`TrajectoryRecord`].
pub(crate) struct Recorder {
    partition: DyadicPartition,
    record: TrajectoryRecord,
}

impl Recorder {
    pub fn new(grid: Grid, sampling: Sampling) -> Recorder {
        assert!(sampling.stride > 0, "sampling stride must be positive");
        Recorder {
            partition: DyadicPartition::new(grid),
            record: TrajectoryRecord {
                sampling,
                samples: Vec::new(),
                snapshots: Vec::new(),
                blow_up: None,
            },
        }
    }

    pub fn wants(&self, step: usize, last: usize) -> bool {
        step % self.record.sampling.stride == 0 || step == last
    }

    /// Records the state; returns `false` once a blow-up was detected.
    pub fn observe(&mut self, step: usize, t: f64, fields: &[ComplexField]) -> bool {
        let sampling = self.record.sampling;
        let sample = norm_sample(&self.partition, sampling, t, fields);
        self.record.samples.push(sample);
        if let Some(stride) = sampling.snapshot_stride {
            if stride > 0 && step % stride == 0 {
                self.record.snapshots.push(Snapshot {
                    t,
                    fields: fields.to_vec(),
                });
            }
        }
        let (norm, value) = sample.largest();
        if !value.is_finite() || value > BLOW_UP_THRESHOLD {
            self.record.blow_up = Some(BlowUp { t, norm, value });
            return false;
        }
        true
    }

    pub fn abort(&mut self, t: f64, value: f64) {
        self.record.blow_up = Some(BlowUp {
            t,
            norm: "L2",
            value,
        });
    }

    pub fn finish(self) -> TrajectoryRecord {
        self.record
    }
}

fn rss(fields: &[ComplexField], norm: impl Fn(&ComplexField) -> f64) -> f64 {
    fields.iter().map(|f| norm(f).powi(2)).sum::<f64>().sqrt()
}

pub(crate) fn norm_sample(
    partition: &DyadicPartition,
    sampling: Sampling,
    t: f64,
    fields: &[ComplexField],
) -> NormSample {
    NormSample {
        t,
        l2: rss(fields, |f| lp_norm(f, 2.0)),
        hs: rss(fields, |f| sobolev_norm(f, sampling.s)),
        h_minus_half: rss(fields, |f| sobolev_norm(f, -0.5)),
        besov_half: rss(fields, |f| partition.besov_norm(f, 0.5, sampling.q, 2.0)),
        ladder: SOBOLEV_LADDER.map(|s| rss(fields, |f| sobolev_norm(f, s))),
    }
}

/// Spectral mass `Σ_k |û(k)|²` summed over components.
pub(crate) fn spectral_mass(spectra: &[Vec<crate::spectral::C64>]) -> f64 {
    spectra
        .iter()
        .flat_map(|c| c.iter())
        .map(|c| c.norm_sqr())
        .sum()
}
