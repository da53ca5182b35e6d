//! Command implementations behind the `qdot-feedback` binary.
//!
//! Each command takes a resolved [`RunConfig`], writes its artifacts under
//! `config.out` and returns the paths it wrote, in a fixed order.

use std::path::PathBuf;

use num_complex::Complex64;
use serde::Serialize;

use crate::config::{OutputFormat, RunConfig};
use crate::error::Result;
use crate::export::{
    kernel_laplace_csv, kernel_time_csv, locus_csv, poles_csv, time_series_csv, write_atomic,
    write_json,
};
use crate::greens::{cubic_coefficients, CubicCoefficients, GreensAnalytic};
use crate::kernel::{closed_loop_kernel, open_loop_kernel, KernelModel};
use crate::locus::{sweep_poles, LocusTrace};
use crate::volterra::{
    compare_solutions, solve_exponential_ode, solve_quadrature, Scheme, SolverReport, TimeSeries,
};

/// Laplace sample points: 20 abscissae log-spaced over [0.1h, 10h] on the
/// real axis and on the line Im s = −ω_S.
pub fn laplace_points(config: &RunConfig) -> Vec<Complex64> {
    let h = config.physical.h;
    let mut pts = Vec::with_capacity(40);
    for im in [0.0, -config.physical.omega_s] {
        for k in 0..20 {
            let sigma = 0.1 * h * 100f64.powf(k as f64 / 19.0);
            pts.push(Complex64::new(sigma, im));
        }
    }
    pts
}

#[derive(Serialize)]
struct KernelSamples {
    t: Vec<f64>,
    values: Vec<Complex64>,
    laplace_s: Vec<Complex64>,
    laplace_values: Vec<Complex64>,
}

#[derive(Serialize)]
struct KernelDump<'a> {
    open_loop: &'a KernelModel,
    closed_loop: &'a KernelModel,
    open_samples: Option<KernelSamples>,
    closed_samples: Option<KernelSamples>,
}

fn kernel_samples(
    kernel: &KernelModel,
    dt: f64,
    steps: usize,
    pts: &[Complex64],
) -> Result<KernelSamples> {
    let t: Vec<f64> = (0..=steps).map(|n| n as f64 * dt).collect();
    let values = t.iter().map(|&t| kernel.at_time(t)).collect::<Result<_>>()?;
    let laplace_values = pts.iter().map(|&s| kernel.laplace(s)).collect::<Result<_>>()?;
    Ok(KernelSamples {
        t,
        values,
        laplace_s: pts.to_vec(),
        laplace_values,
    })
}

/// Open- and closed-loop kernels, sampled in time and on the Laplace grid.
pub fn cmd_kernel(config: &RunConfig) -> Result<Vec<PathBuf>> {
    let open = open_loop_kernel(&config.physical);
    let closed = closed_loop_kernel(&config.physical, &config.feedback);
    let pts = laplace_points(config);
    let steps = config.steps();
    let out = &config.out;
    let mut written = Vec::new();
    match config.format {
        OutputFormat::Csv => {
            for (name, k) in [("open", &open), ("closed", &closed)] {
                let p = out.join(format!("kernel_{name}_time.csv"));
                write_atomic(&p, kernel_time_csv(k, config.dt, steps)?.as_bytes())?;
                written.push(p);
                let p = out.join(format!("kernel_{name}_laplace.csv"));
                write_atomic(&p, kernel_laplace_csv(k, &pts)?.as_bytes())?;
                written.push(p);
            }
            let p = out.join("kernel_terms.json");
            write_json(
                &p,
                &KernelDump {
                    open_loop: &open,
                    closed_loop: &closed,
                    open_samples: None,
                    closed_samples: None,
                },
            )?;
            written.push(p);
        }
        OutputFormat::Json => {
            let p = out.join("kernel.json");
            write_json(
                &p,
                &KernelDump {
                    open_loop: &open,
                    closed_loop: &closed,
                    open_samples: Some(kernel_samples(&open, config.dt, steps, &pts)?),
                    closed_samples: Some(kernel_samples(&closed, config.dt, steps, &pts)?),
                },
            )?;
            written.push(p);
        }
    }
    Ok(written)
}

/// Amplitude g(t) from the pole/residue form and from both time-domain solvers.
#[derive(Debug, Clone)]
pub struct GreensRun {
    pub analytic: GreensAnalytic,
    pub series: Vec<(Scheme, TimeSeries)>,
    pub reports: Vec<SolverReport>,
}

pub fn run_greens(config: &RunConfig) -> Result<GreensRun> {
    let steps = config.steps();
    if let Some(gamma) = config.markovian_gamma {
        // constant kernel: no exponential-sum form, so the oracles do not apply
        let analytic = GreensAnalytic::markovian(gamma, config.physical.omega_s)?;
        let s = TimeSeries::from_fn(config.dt, steps, |t| analytic.evaluate(t));
        return Ok(GreensRun {
            analytic,
            series: vec![(Scheme::Analytic, s)],
            reports: Vec::new(),
        });
    }
    let kernel = closed_loop_kernel(&config.physical, &config.feedback);
    let analytic = GreensAnalytic::new(&config.physical, &config.feedback)?;
    let a = TimeSeries::from_fn(config.dt, steps, |t| analytic.evaluate(t));
    let omega_s = config.physical.omega_s;
    let q = solve_quadrature(&kernel, omega_s, config.dt, config.t_final)?;
    let o = solve_exponential_ode(&kernel, omega_s, config.dt, config.t_final)?;
    let reports = vec![
        compare_solutions(&q, Scheme::Quadrature, &a, Scheme::Analytic)?,
        compare_solutions(&o, Scheme::ExponentialOde, &a, Scheme::Analytic)?,
        compare_solutions(&q, Scheme::Quadrature, &o, Scheme::ExponentialOde)?,
    ];
    Ok(GreensRun {
        analytic,
        series: vec![
            (Scheme::Analytic, a),
            (Scheme::Quadrature, q),
            (Scheme::ExponentialOde, o),
        ],
        reports,
    })
}

fn scheme_file_stem(s: Scheme) -> &'static str {
    match s {
        Scheme::Analytic => "analytic",
        Scheme::Quadrature => "quadrature",
        Scheme::ExponentialOde => "ode",
        Scheme::Richardson => "richardson",
    }
}

#[derive(Serialize)]
struct GreensReport<'a> {
    config: &'a RunConfig,
    greens: &'a GreensAnalytic,
    reports: &'a [SolverReport],
}

#[derive(Serialize)]
struct SeriesDump {
    scheme: Scheme,
    dt: f64,
    values: Vec<Complex64>,
}

pub fn cmd_greens(config: &RunConfig) -> Result<Vec<PathBuf>> {
    let run = run_greens(config)?;
    let out = &config.out;
    let mut written = Vec::new();
    match config.format {
        OutputFormat::Csv => {
            for (scheme, s) in &run.series {
                let p = out.join(format!("greens_{}.csv", scheme_file_stem(*scheme)));
                write_atomic(&p, time_series_csv(s).as_bytes())?;
                written.push(p);
            }
        }
        OutputFormat::Json => {
            let dump: Vec<SeriesDump> = run
                .series
                .iter()
                .map(|(scheme, s)| SeriesDump {
                    scheme: *scheme,
                    dt: s.dt,
                    values: s.values.clone(),
                })
                .collect();
            let p = out.join("greens.json");
            write_json(&p, &dump)?;
            written.push(p);
        }
    }
    let p = out.join("greens_report.json");
    write_json(
        &p,
        &GreensReport {
            config,
            greens: &run.analytic,
            reports: &run.reports,
        },
    )?;
    written.push(p);
    Ok(written)
}

#[derive(Serialize)]
struct PolesDump<'a> {
    coefficients: &'a CubicCoefficients,
    greens: &'a GreensAnalytic,
}

pub fn cmd_poles(config: &RunConfig) -> Result<Vec<PathBuf>> {
    let coeffs = cubic_coefficients(&config.physical, &config.feedback);
    let greens = GreensAnalytic::from_coefficients(&coeffs)?;
    let p = match config.format {
        OutputFormat::Csv => {
            let p = config.out.join("poles.csv");
            write_atomic(&p, poles_csv(&greens).as_bytes())?;
            p
        }
        OutputFormat::Json => {
            let p = config.out.join("poles.json");
            write_json(
                &p,
                &PolesDump {
                    coefficients: &coeffs,
                    greens: &greens,
                },
            )?;
            p
        }
    };
    Ok(vec![p])
}

pub fn cmd_locus(config: &RunConfig) -> Result<(LocusTrace, Vec<PathBuf>)> {
    let trace = sweep_poles(&config.sweep)?;
    let p = match config.format {
        OutputFormat::Csv => {
            let p = config.out.join("locus.csv");
            write_atomic(&p, locus_csv(&trace).as_bytes())?;
            p
        }
        OutputFormat::Json => {
            let p = config.out.join("locus.json");
            write_json(&p, &trace)?;
            p
        }
    };
    Ok((trace, vec![p]))
}
