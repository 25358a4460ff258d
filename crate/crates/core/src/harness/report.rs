use serde::{Deserialize, Serialize};

/// Empirical LHS/RHS statistics for one inequality over a sample set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub inequality_id: String,
    pub q: f64,
    pub sample_count: usize,
    pub max_ratio: f64,
    pub mean_ratio: f64,
    pub p95_ratio: f64,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config_hash: Option<String>,
}

impl RatioReport {
    pub fn is_valid(&self) -> bool {
        [self.max_ratio, self.mean_ratio, self.p95_ratio]
            .iter()
            .all(|r| r.is_finite() && *r >= 0.0)
    }
}

/// `lhs / rhs` with `0/0 = 0`.
pub fn ratio(lhs: f64, rhs: f64) -> f64 {
    if lhs == 0.0 {
        0.0
    } else {
        lhs / rhs
    }
}

/// Collects ratios in sample order; the summary does not depend on how the
/// samples were scheduled.
#[derive(Debug, Clone)]
pub struct RatioAccumulator {
    id: String,
    q: f64,
    seed: u64,
    ratios: Vec<f64>,
}

impl RatioAccumulator {
    pub fn new(id: &str, q: f64, seed: u64) -> RatioAccumulator {
        RatioAccumulator {
            id: id.to_string(),
            q,
            seed,
            ratios: Vec::new(),
        }
    }

    pub fn push(&mut self, lhs: f64, rhs: f64) {
        self.ratios.push(ratio(lhs, rhs));
    }

    pub fn ratios(&self) -> &[f64] {
        &self.ratios
    }

    pub fn finish(self) -> RatioReport {
        let count = self.ratios.len();
        let mut sorted = self.ratios.clone();
        sorted.sort_by(f64::total_cmp);
        let (max, mean, p95) = if count == 0 {
            (0.0, 0.0, 0.0)
        } else {
            let rank = ((0.95 * count as f64).ceil() as usize).clamp(1, count);
            (
                sorted[count - 1],
                sorted.iter().sum::<f64>() / count as f64,
                sorted[rank - 1],
            )
        };
        RatioReport {
            inequality_id: self.id,
            q: self.q,
            sample_count: count,
            max_ratio: max,
            mean_ratio: mean,
            p95_ratio: p95,
            seed: self.seed,
            config_hash: None,
        }
    }
}
