//! Run configuration, read from TOML. Top-level keys are shared by every
//! command; each command has an optional table of its own. Unknown keys
//! are rejected.
//!
//! ```toml
//! metric = "general_berwald"   # or: phi = "sqrt(1 + s^2)"
//! dim = 3
//! a = [0.1, 0.05, 0.0]
//! seed = 7
//! samples = 100
//! radius = 0.6                 # defaults to 0.6 of the domain radius
//! tol = 1e-7                   # overrides the command's main tolerance
//! scheme = "ad"                # ad | fd
//! format = "json"              # json | csv
//! threads = 1
//!
//! [check_parallel]
//! form = ["x1", "x2", "x3"]    # coefficient expressions in x1..xn
//! c = 1.0                      # or the catalogue family
//! c_mu = [0.0, 0.2, 0.0]
//!
//! [scan]
//! x_points = 5
//! y_per_point = 20
//! rows = "both"                # berwald | curvature | both
//! threshold = 1e-7
//!
//! [sphsym]
//! f = "1"                      # radial factor in r
//! p = "r*s/10"                 # P(r, s); enables the parallel-form checks
//! grid = 20
//! r_min = 0.05
//! r_max = 0.6
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::calculus::Scheme;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::ConfigError(format!("unknown format `{other}`"))),
        }
    }
}

pub const MIN_SAMPLES: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub metric: Option<String>,
    pub phi: Option<String>,
    pub dim: usize,
    pub a: Option<Vec<f64>>,
    pub seed: u64,
    pub samples: usize,
    pub radius: Option<f64>,
    pub tol: Option<f64>,
    pub scheme: Scheme,
    pub format: Format,
    pub threads: usize,
    pub check_parallel: CheckParallelConfig,
    pub scan: ScanConfig,
    pub sphsym: SphsymConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            metric: None,
            phi: None,
            dim: 3,
            a: None,
            seed: 0,
            samples: 100,
            radius: None,
            tol: None,
            scheme: Scheme::Ad,
            format: Format::Json,
            threads: 1,
            check_parallel: CheckParallelConfig::default(),
            scan: ScanConfig::default(),
            sphsym: SphsymConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CheckParallelConfig {
    pub form: Option<Vec<String>>,
    pub c: f64,
    pub c_mu: Option<Vec<f64>>,
}

impl Default for CheckParallelConfig {
    fn default() -> Self {
        CheckParallelConfig {
            form: None,
            c: 1.0,
            c_mu: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScanConfig {
    pub x_points: usize,
    pub y_per_point: usize,
    pub rows: String,
    pub threshold: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            x_points: 5,
            y_per_point: 20,
            rows: "both".into(),
            threshold: 1e-7,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SphsymConfig {
    pub f: Option<String>,
    pub p: Option<String>,
    pub grid: usize,
    pub r_min: f64,
    pub r_max: f64,
}

impl Default for SphsymConfig {
    fn default() -> Self {
        SphsymConfig {
            f: None,
            p: None,
            grid: 20,
            r_min: 0.05,
            r_max: 0.6,
        }
    }
}

impl RunConfig {
    pub fn from_toml_str(src: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(src).map_err(|e| Error::ConfigError(e.to_string()))?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| Error::ConfigError(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&src)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::ConfigError(e.to_string()))
    }

    /// Checks the invariants that do not depend on the metric's domain.
    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::ConfigError(format!(
                "dim must be at least 2, got {}",
                self.dim
            )));
        }
        if self.samples < MIN_SAMPLES {
            return Err(Error::ConfigError(format!(
                "samples must be at least {MIN_SAMPLES}, got {}",
                self.samples
            )));
        }
        if self.metric.is_some() && self.phi.is_some() {
            return Err(Error::ConfigError(
                "give either `metric` or `phi`, not both".into(),
            ));
        }
        if self.threads == 0 {
            return Err(Error::ConfigError("threads must be positive".into()));
        }
        if let Some(r) = self.radius {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::ConfigError(format!(
                    "radius must be positive, got {r}"
                )));
            }
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::ConfigError(format!("tol must be positive, got {t}")));
            }
        }
        if self.sphsym.grid < 2
            || !(0.0 < self.sphsym.r_min && self.sphsym.r_min < self.sphsym.r_max)
        {
            return Err(Error::ConfigError(
                "sphsym grid needs grid ≥ 2 and 0 < r_min < r_max".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        let cfg = RunConfig::from_toml_str(
            "metric = \"klein\" # inline comment\ndim = 4\nseed = 9\n[scan]\nx_points = 7\n",
        )
        .unwrap();
        assert_eq!(cfg.dim, 4);
        assert_eq!(cfg.scan.x_points, 7);
        assert_eq!(cfg.scan.y_per_point, 20);
        let back = RunConfig::from_toml_str(&cfg.to_toml_string().unwrap()).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn unknown_keys_fail() {
        assert!(matches!(
            RunConfig::from_toml_str("metrik = \"klein\""),
            Err(Error::ConfigError(_))
        ));
        assert!(matches!(
            RunConfig::from_toml_str("[scan]\nrowz = 1"),
            Err(Error::ConfigError(_))
        ));
        assert!(matches!(
            RunConfig::from_toml_str("scheme = \"xd\""),
            Err(Error::ConfigError(_))
        ));
    }

    #[test]
    fn validation() {
        let mut cfg = RunConfig::default();
        cfg.validate().unwrap();
        cfg.samples = 5;
        assert!(cfg.validate().is_err());
        cfg.samples = 10;
        cfg.dim = 1;
        assert!(cfg.validate().is_err());
    }
}
