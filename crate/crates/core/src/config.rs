//! Run configuration: a flat TOML key-value file merged with command-line overrides.
//!
//! ```toml
//! omega_s = 10.0
//! delta = 0.05
//! h = 0.3
//! eta = 0.4
//! r = 2.0
//! theta = 0.0
//! dt = 1e-3
//! T = 60.0
//!
//! [sweep]
//! parameter = "r"
//! start = 0.0
//! stop = 3.0
//! steps = 301
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::locus::{SweepParameter, SweepSpec, DEFAULT_STEPS};
use crate::params::{FeedbackParams, PhysicalParams};

pub const DEFAULT_DT: f64 = 1e-3;
pub const DEFAULT_T: f64 = 60.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!(
                "format: expected csv or json, got `{other}`"
            ))),
        }
    }
}

/// Sweep section with every key optional.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepOverrides {
    pub parameter: Option<String>,
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub steps: Option<usize>,
}

/// Every configurable key, each optional; used both for files and CLI flags.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigOverrides {
    pub omega_s: Option<f64>,
    pub delta: Option<f64>,
    pub h: Option<f64>,
    pub eta: Option<f64>,
    pub r: Option<f64>,
    pub theta: Option<f64>,
    pub dt: Option<f64>,
    #[serde(rename = "T")]
    pub t_final: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub markovian_gamma: Option<f64>,
    #[serde(default)]
    pub sweep: SweepOverrides,
}

impl ConfigOverrides {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    /// `other` wins wherever it sets a key.
    pub fn merged_with(self, other: ConfigOverrides) -> ConfigOverrides {
        ConfigOverrides {
            omega_s: other.omega_s.or(self.omega_s),
            delta: other.delta.or(self.delta),
            h: other.h.or(self.h),
            eta: other.eta.or(self.eta),
            r: other.r.or(self.r),
            theta: other.theta.or(self.theta),
            dt: other.dt.or(self.dt),
            t_final: other.t_final.or(self.t_final),
            out: other.out.or(self.out),
            format: other.format.or(self.format),
            markovian_gamma: other.markovian_gamma.or(self.markovian_gamma),
            sweep: SweepOverrides {
                parameter: other.sweep.parameter.or(self.sweep.parameter),
                start: other.sweep.start.or(self.sweep.start),
                stop: other.sweep.stop.or(self.sweep.stop),
                steps: other.sweep.steps.or(self.sweep.steps),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub physical: PhysicalParams,
    pub feedback: FeedbackParams,
    pub dt: f64,
    #[serde(rename = "T")]
    pub t_final: f64,
    pub sweep: SweepSpec,
    pub out: PathBuf,
    pub format: OutputFormat,
    /// Constant damping rate γ; when set, `greens` uses the Markovian kernel γ/2.
    pub markovian_gamma: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self::resolve(ConfigOverrides::default()).expect("defaults are valid")
    }
}

fn config_err(e: Error) -> Error {
    match e {
        Error::InvalidParameter { field, reason } => Error::Config(format!("{field}: {reason}")),
        other => other,
    }
}

impl RunConfig {
    /// Fills unset keys with the reference device and default solver grid,
    /// then validates.
    pub fn resolve(o: ConfigOverrides) -> Result<Self> {
        let base = PhysicalParams::default();
        let physical = PhysicalParams::new(
            o.omega_s.unwrap_or(base.omega_s),
            o.delta.unwrap_or(base.delta),
            o.h.unwrap_or(base.h),
            o.eta.unwrap_or(base.eta),
        )
        .map_err(config_err)?;
        let feedback =
            FeedbackParams::new(o.r.unwrap_or(0.0), o.theta.unwrap_or(0.0)).map_err(config_err)?;
        let dt = o.dt.unwrap_or(DEFAULT_DT);
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::Config("dt: must be finite and > 0".into()));
        }
        let t_final = o.t_final.unwrap_or(DEFAULT_T);
        if !(t_final >= dt) || !t_final.is_finite() {
            return Err(Error::Config("T: must be finite and >= dt".into()));
        }
        let parameter: SweepParameter = o
            .sweep
            .parameter
            .as_deref()
            .unwrap_or("r")
            .parse()
            .map_err(config_err)?;
        let (start, stop) = match parameter {
            SweepParameter::R => (0.0, 0.3 * physical.omega_s),
            SweepParameter::Eta => (0.0, 1.6),
            SweepParameter::Theta => (-std::f64::consts::PI, 0.0),
        };
        let sweep = SweepSpec {
            parameter,
            start: o.sweep.start.unwrap_or(start),
            stop: o.sweep.stop.unwrap_or(stop),
            steps: o.sweep.steps.unwrap_or(DEFAULT_STEPS),
            physical,
            feedback,
        };
        sweep.validate().map_err(config_err)?;
        let format = match o.format.as_deref() {
            None => OutputFormat::default(),
            Some(f) => f.parse()?,
        };
        if let Some(g) = o.markovian_gamma {
            if !(g >= 0.0) || !g.is_finite() {
                return Err(Error::Config("markovian_gamma: must be finite and >= 0".into()));
            }
        }
        Ok(Self {
            physical,
            feedback,
            dt,
            t_final,
            sweep,
            out: o.out.unwrap_or_else(|| PathBuf::from("out")),
            format,
            markovian_gamma: o.markovian_gamma,
        })
    }

    /// Reads `path` (if given) and applies `overrides` on top.
    pub fn load(path: Option<&Path>, overrides: ConfigOverrides) -> Result<Self> {
        let file = match path {
            Some(p) => ConfigOverrides::from_file(p)?,
            None => ConfigOverrides::default(),
        };
        Self::resolve(file.merged_with(overrides))
    }

    pub fn steps(&self) -> usize {
        (self.t_final / self.dt).round() as usize
    }
}
