use anyhow::{bail, Context, Result};
use flatholo_core::mwbuild::Calibration;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

pub const SCHEMA: u32 = 1;
pub const SEED_ENV: &str = "FLATHOLO_SEED";

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Sup-norm tolerance for PL identities.
    pub pl_sup: f64,
    pub defect: f64,
    /// Slack added to eps in distance-to-rotation checks.
    pub dist_slack: f64,
    /// Residual for the SU(2) solvers.
    pub su2: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { pl_sup: 1e-12, defect: 1e-8, dist_slack: 1e-4, su2: 1e-6 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    /// Points of the log grid on `[0.0125, 0.2]` used by `calibrate`.
    pub calibration_points: usize,
    /// Sample points for sup-norm checks of PL maps.
    pub verify_grid: usize,
    /// Random instances per verification suite.
    pub trials: usize,
    pub tolerances: Tolerances,
    pub calibration: Calibration,
    /// Format of sweep tables.
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            calibration_points: 9,
            verify_grid: 10_000,
            trials: 50,
            tolerances: Tolerances::default(),
            calibration: Calibration::default(),
            format: OutputFormat::Csv,
        }
    }
}

impl RunConfig {
    /// Reads `path` (or the defaults) and applies the seed override from the
    /// environment.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let mut cfg = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?
            }
            None => RunConfig::default(),
        };
        if let Ok(s) = std::env::var(SEED_ENV) {
            cfg.seed = s.trim().parse().with_context(|| format!("{SEED_ENV}={s} is not an unsigned integer"))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let t = &self.tolerances;
        for (name, v) in [("pl_sup", t.pl_sup), ("defect", t.defect), ("dist_slack", t.dist_slack), ("su2", t.su2)] {
            if !(v > 0.0 && v.is_finite()) {
                bail!("tolerance {name} must be positive, got {v}");
            }
        }
        if self.calibration_points < 3 {
            bail!("calibration_points must be at least 3");
        }
        if self.verify_grid == 0 || self.trials == 0 {
            bail!("verify_grid and trials must be positive");
        }
        if !(self.calibration.c0 > 0.0) {
            bail!("calibration c0 must be positive");
        }
        Ok(())
    }

    /// SHA-256 of the compact JSON serialization.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        hex::encode(Sha256::digest(bytes))
    }

    /// `0.0125 * 16^(i / (n - 1))`, which is the core calibration grid for
    /// `n = 9`.
    pub fn calibration_grid(&self) -> Vec<f64> {
        let n = self.calibration_points;
        (0..n).map(|i| 0.0125 * 16f64.powf(i as f64 / (n - 1) as f64)).collect()
    }
}
