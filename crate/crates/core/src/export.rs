//! CSV and JSON serialisation of kernels, time series, poles and loci.
//!
//! Numbers are written with 17 significant digits in scientific notation so
//! identical inputs give byte-identical files. Complex values become paired
//! real/imaginary columns in CSV and `[re, im]` arrays in JSON.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::greens::GreensAnalytic;
use crate::kernel::KernelModel;
use crate::locus::{AmplitudeRow, LocusTrace};
use crate::volterra::TimeSeries;

pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Comma-joined rows with a header line. Every line ends in `\n`.
pub struct Csv {
    buf: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut buf = header.join(",");
        buf.push('\n');
        Self { buf }
    }

    pub fn row(&mut self, cells: &[f64]) {
        let mut first = true;
        for c in cells {
            if !first {
                self.buf.push(',');
            }
            first = false;
            let _ = write!(self.buf, "{}", fmt_num(*c));
        }
        self.buf.push('\n');
    }

    pub fn as_str(&self) -> &str {
        &self.buf
    }

    pub fn into_string(self) -> String {
        self.buf
    }
}

/// Writes to a sibling temporary file then renames it over `path`.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into());
    let tmp = dir.join(format!(".{name}.tmp"));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

/// Columns `t, re_M, im_M` sampled at `t_n = n·dt`.
pub fn kernel_time_csv(kernel: &KernelModel, dt: f64, steps: usize) -> Result<String> {
    let mut csv = Csv::new(&["t", "re_M", "im_M"]);
    for n in 0..=steps {
        let t = n as f64 * dt;
        let m = kernel.at_time(t)?;
        csv.row(&[t, m.re, m.im]);
    }
    Ok(csv.into_string())
}

/// Columns `re_s, im_s, re_M, im_M` at each Laplace point.
pub fn kernel_laplace_csv(kernel: &KernelModel, points: &[Complex64]) -> Result<String> {
    let mut csv = Csv::new(&["re_s", "im_s", "re_M", "im_M"]);
    for &s in points {
        let m = kernel.laplace(s)?;
        csv.row(&[s.re, s.im, m.re, m.im]);
    }
    Ok(csv.into_string())
}

/// Columns `t, re_g, im_g, abs_g`.
pub fn time_series_csv(series: &TimeSeries) -> String {
    let mut csv = Csv::new(&["t", "re_g", "im_g", "abs_g"]);
    for (n, v) in series.values.iter().enumerate() {
        csv.row(&[series.time(n), v.re, v.im, v.norm()]);
    }
    csv.into_string()
}

/// One row per mode: `index, re_pole, im_pole, re_residue, im_residue`.
pub fn poles_csv(greens: &GreensAnalytic) -> String {
    let mut csv = Csv::new(&["index", "re_p", "im_p", "re_q", "im_q"]);
    for (i, m) in greens.modes.iter().enumerate() {
        csv.row(&[(i + 1) as f64, m.pole.re, m.pole.im, m.residue.re, m.residue.im]);
    }
    csv.into_string()
}

/// Columns `param, re_p1, im_p1, re_p2, im_p2, re_p3, im_p3, m`.
pub fn locus_csv(trace: &LocusTrace) -> String {
    let mut csv = Csv::new(&[
        "param", "re_p1", "im_p1", "re_p2", "im_p2", "re_p3", "im_p3", "m",
    ]);
    for ((v, p), m) in trace.values.iter().zip(&trace.poles).zip(&trace.metric) {
        csv.row(&[*v, p[0].re, p[0].im, p[1].re, p[1].im, p[2].re, p[2].im, *m]);
    }
    csv.into_string()
}

pub fn amplitude_csv(param: &str, rows: &[AmplitudeRow]) -> String {
    let mut csv = Csv::new(&[param, "min_abs_g", "final_abs_g"]);
    for r in rows {
        csv.row(&[r.value, r.min_abs, r.final_abs]);
    }
    csv.into_string()
}
