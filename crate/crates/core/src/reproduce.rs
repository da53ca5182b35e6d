//! Fixed datasets for the four standard studies of the reference device
//! (ω_S = 10, δ = 0.05, h = 0.3 μeV, θ = 0):
//!
//! * `fig2`: root locus versus noise strength η at r = 0;
//! * `fig3`: root locus versus feedback strength r at η = 0.4;
//! * `fig4`: |g(t)| for r ∈ {0, 0.1, 0.2, 0.3}·ω_S at η = 0.4;
//! * `fig5`: |g₀(t)| for η ∈ {0.4, 0.8, 1.2, 1.6} at r = 0.
//!
//! Each run writes into `<out>/<figure>/` together with a `manifest.json`
//! recording every parameter needed to regenerate the numbers.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::export::{amplitude_csv, locus_csv, time_series_csv, write_atomic, write_json, Csv};
use crate::greens::GreensAnalytic;
use crate::locus::{amplitude_table, sweep_poles, AmplitudeRow, SweepParameter, SweepSpec, DEFAULT_STEPS};
use crate::params::{FeedbackParams, PhysicalParams};
use crate::volterra::TimeSeries;

pub const ETA_VALUES: [f64; 4] = [0.4, 0.8, 1.2, 1.6];
/// Multiples of ω_S.
pub const R_FRACTIONS: [f64; 4] = [0.0, 0.1, 0.2, 0.3];
/// Upper bound on |g₀(T)| at η = 1.6 used as the persistent-damping check.
pub const STRONG_COUPLING_FINAL_LIMIT: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Figure {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
}

impl Figure {
    pub fn id(self) -> &'static str {
        match self {
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
            Figure::Fig5 => "fig5",
        }
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig2" => Ok(Figure::Fig2),
            "fig3" => Ok(Figure::Fig3),
            "fig4" => Ok(Figure::Fig4),
            "fig5" => Ok(Figure::Fig5),
            other => Err(Error::Config(format!(
                "figure: expected fig2, fig3, fig4 or fig5, got `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ManifestFile {
    pub name: String,
    pub columns: Vec<String>,
    /// Swept or fixed parameter this file belongs to, if any.
    pub parameter: Option<(String, f64)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRecord {
    pub parameter: SweepParameter,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub limit: Option<f64>,
    pub passed: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub figure: Figure,
    pub physical: PhysicalParams,
    pub feedback: FeedbackParams,
    pub theta: f64,
    pub dt: f64,
    #[serde(rename = "T")]
    pub t_final: f64,
    pub eta_values: Vec<f64>,
    pub r_values: Vec<f64>,
    pub sweep: Option<SweepRecord>,
    pub files: Vec<ManifestFile>,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone)]
pub struct Dataset {
    pub dir: PathBuf,
    pub manifest: Manifest,
    pub amplitudes: Vec<AmplitudeRow>,
}

fn columns(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

const LOCUS_COLUMNS: [&str; 8] = ["param", "re_p1", "im_p1", "re_p2", "im_p2", "re_p3", "im_p3", "m"];
const SERIES_COLUMNS: [&str; 4] = ["t", "re_g", "im_g", "abs_g"];

/// Builds the dataset for `figure` under `out/<figure>/` using time grid `dt`, `t_final`.
pub fn reproduce(figure: Figure, out: &Path, dt: f64, t_final: f64) -> Result<Dataset> {
    if !(dt > 0.0) || !(t_final >= dt) {
        return Err(Error::Config("dt and T must satisfy 0 < dt <= T".into()));
    }
    let base = PhysicalParams::default();
    let open = FeedbackParams::open_loop();
    let r_values: Vec<f64> = R_FRACTIONS.iter().map(|f| f * base.omega_s).collect();
    let dir = out.join(figure.id());
    let steps = (t_final / dt).round() as usize;

    let mut manifest = Manifest {
        figure,
        physical: base,
        feedback: open,
        theta: 0.0,
        dt,
        t_final,
        eta_values: ETA_VALUES.to_vec(),
        r_values: r_values.clone(),
        sweep: None,
        files: Vec::new(),
        checks: Vec::new(),
    };
    let mut amplitudes = Vec::new();

    match figure {
        Figure::Fig2 | Figure::Fig3 => {
            let spec = match figure {
                Figure::Fig2 => SweepSpec {
                    parameter: SweepParameter::Eta,
                    start: 0.0,
                    stop: 1.6,
                    steps: DEFAULT_STEPS,
                    physical: base,
                    feedback: open,
                },
                _ => SweepSpec {
                    parameter: SweepParameter::R,
                    start: 0.0,
                    stop: 0.3 * base.omega_s,
                    steps: DEFAULT_STEPS,
                    physical: base,
                    feedback: open,
                },
            };
            let trace = sweep_poles(&spec)?;
            write_atomic(&dir.join("locus.csv"), locus_csv(&trace).as_bytes())?;
            manifest.files.push(ManifestFile {
                name: "locus.csv".into(),
                columns: columns(&LOCUS_COLUMNS),
                parameter: None,
            });

            let markers: Vec<f64> = match figure {
                Figure::Fig2 => ETA_VALUES.to_vec(),
                _ => r_values.clone(),
            };
            let mut csv = Csv::new(&LOCUS_COLUMNS);
            for &v in &markers {
                let (p, f) = spec.parameter.apply(v, &base, &open)?;
                let g = GreensAnalytic::new(&p, &f)?;
                let poles = g.poles();
                csv.row(&[
                    v,
                    poles[0].re,
                    poles[0].im,
                    poles[1].re,
                    poles[1].im,
                    poles[2].re,
                    poles[2].im,
                    g.slow_rate(),
                ]);
            }
            write_atomic(&dir.join("markers.csv"), csv.as_str().as_bytes())?;
            manifest.files.push(ManifestFile {
                name: "markers.csv".into(),
                columns: columns(&LOCUS_COLUMNS),
                parameter: None,
            });

            let last = trace.len() - 1;
            for b in 0..3 {
                manifest.checks.push(Check {
                    name: format!("re_branch{}_at_stop", b + 1),
                    value: trace.poles[last][b].re,
                    limit: None,
                    passed: None,
                });
            }
            manifest.sweep = Some(SweepRecord {
                parameter: spec.parameter,
                start: spec.start,
                stop: spec.stop,
                steps: spec.steps,
            });
        }
        Figure::Fig4 | Figure::Fig5 => {
            let (parameter, values, physical) = match figure {
                Figure::Fig4 => (SweepParameter::R, r_values.clone(), base),
                _ => (SweepParameter::Eta, ETA_VALUES.to_vec(), base),
            };
            for (i, &v) in values.iter().enumerate() {
                let (p, f) = parameter.apply(v, &physical, &open)?;
                let g = GreensAnalytic::new(&p, &f)?;
                let s = TimeSeries::from_fn(dt, steps, |t| g.evaluate(t));
                let name = format!("greens_{}_{}.csv", parameter.name(), i);
                write_atomic(&dir.join(&name), time_series_csv(&s).as_bytes())?;
                manifest.files.push(ManifestFile {
                    name,
                    columns: columns(&SERIES_COLUMNS),
                    parameter: Some((parameter.name().into(), v)),
                });
            }
            amplitudes = amplitude_table(parameter, &values, &physical, &open, t_final, dt)?;
            write_atomic(
                &dir.join("amplitudes.csv"),
                amplitude_csv(parameter.name(), &amplitudes).as_bytes(),
            )?;
            manifest.files.push(ManifestFile {
                name: "amplitudes.csv".into(),
                columns: columns(&[parameter.name(), "min_abs_g", "final_abs_g"]),
                parameter: None,
            });
            if figure == Figure::Fig5 {
                let strongest = amplitudes.last().expect("four rows").final_abs;
                manifest.checks.push(Check {
                    name: "final_abs_g_at_eta_1.6".into(),
                    value: strongest,
                    limit: Some(STRONG_COUPLING_FINAL_LIMIT),
                    passed: Some(strongest <= STRONG_COUPLING_FINAL_LIMIT),
                });
            } else {
                let first = amplitudes[0].final_abs;
                let last = amplitudes.last().expect("four rows").final_abs;
                manifest.checks.push(Check {
                    name: "final_abs_g_gain_r_0.3_over_r_0".into(),
                    value: last - first,
                    limit: Some(0.0),
                    passed: Some(last > first),
                });
            }
        }
    }

    write_json(&dir.join("manifest.json"), &manifest)?;
    Ok(Dataset {
        dir,
        manifest,
        amplitudes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_ids_parse() {
        for id in ["fig2", "fig3", "fig4", "fig5"] {
            assert_eq!(id.parse::<Figure>().unwrap().id(), id);
        }
        assert!("".parse::<Figure>().is_err());
        assert!("fig6".parse::<Figure>().is_err());
    }
}
