//! Benchmark sweep configuration, loadable from JSON.

use crate::backends::BackendKind;
use crate::systems::SystemId;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// What to measure: the cross product of systems, backends and sizes,
/// with shared integration and repetition settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BenchConfig {
    pub systems: Vec<SystemId>,
    pub backends: Vec<BackendKind>,
    /// Problem sizes N, strictly increasing. For the lattice, N is rounded
    /// to the nearest square grid; records report the actual node count.
    pub sizes: Vec<usize>,
    /// Integration steps inside the timed region of every run.
    pub steps: usize,
    /// Timed repetitions per configuration; the median is reported.
    pub reps: usize,
    pub dt: f64,
    /// Untimed runs before measurement, excluding first-touch effects.
    pub warmup: usize,
    pub seed: u64,
    /// Worker threads for the parallel backend; defaults to the
    /// environment override or the machine's available parallelism.
    pub workers: Option<usize>,
    /// Machine peak memory bandwidth; when set, records also carry
    /// throughput as a fraction of this peak.
    pub peak_gbps: Option<f64>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            systems: SystemId::ALL.to_vec(),
            backends: BackendKind::ALL.to_vec(),
            sizes: vec![100, 1_000, 10_000, 100_000, 1_000_000, 10_000_000],
            steps: 100,
            reps: 10,
            dt: 0.01,
            warmup: 1,
            seed: 42,
            workers: None,
            peak_gbps: None,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.systems.is_empty() {
            return Err(Error::InvalidConfig("no systems selected".into()));
        }
        if self.backends.is_empty() {
            return Err(Error::InvalidConfig("no backends selected".into()));
        }
        if self.reps < 1 {
            return Err(Error::InvalidConfig(
                "at least one repetition is required".into(),
            ));
        }
        if self.sizes.is_empty() {
            return Err(Error::InvalidConfig("no problem sizes given".into()));
        }
        if self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig(
                "sizes must be strictly increasing".into(),
            ));
        }
        if self.sizes[0] == 0 {
            return Err(Error::InvalidConfig("sizes must be positive".into()));
        }
        if !self.dt.is_finite() {
            return Err(Error::InvalidConfig(format!("dt must be finite, got {}", self.dt)));
        }
        if let Some(w) = self.workers {
            if w == 0 {
                return Err(Error::InvalidConfig("workers must be at least 1".into()));
            }
        }
        if let Some(p) = self.peak_gbps {
            if !(p.is_finite() && p > 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "peak bandwidth must be positive and finite, got {p}"
                )));
            }
        }
        Ok(())
    }

    pub fn from_json_str(json: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(json)?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }
}
