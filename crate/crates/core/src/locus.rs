//! Root loci of the Green's function over a swept parameter.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::greens::{cubic_coefficients, residues, solve_poles, GreensAnalytic};
use crate::params::{FeedbackParams, PhysicalParams};

/// Default number of sweep samples.
pub const DEFAULT_STEPS: usize = 301;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParameter {
    R,
    Eta,
    Theta,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::R => "r",
            SweepParameter::Eta => "eta",
            SweepParameter::Theta => "theta",
        }
    }

    /// Copies of the fixed parameters with this parameter set to `value`.
    pub fn apply(
        self,
        value: f64,
        physical: &PhysicalParams,
        feedback: &FeedbackParams,
    ) -> Result<(PhysicalParams, FeedbackParams)> {
        let (mut p, mut f) = (*physical, *feedback);
        match self {
            SweepParameter::R => f = FeedbackParams::new(value, f.theta)?,
            SweepParameter::Eta => p = PhysicalParams::new(p.omega_s, p.delta, p.h, value)?,
            SweepParameter::Theta => f = FeedbackParams::new(f.r, value)?,
        }
        Ok((p, f))
    }
}

impl std::str::FromStr for SweepParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "r" => Ok(SweepParameter::R),
            "eta" => Ok(SweepParameter::Eta),
            "theta" => Ok(SweepParameter::Theta),
            other => Err(Error::invalid(
                "sweep.parameter",
                format!("expected r, eta or theta, got `{other}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub physical: PhysicalParams,
    pub feedback: FeedbackParams,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::invalid("sweep.steps", "need at least 2 steps"));
        }
        if !self.start.is_finite() || !self.stop.is_finite() {
            return Err(Error::invalid("sweep.start", "bounds must be finite"));
        }
        if self.start == self.stop {
            return Err(Error::invalid("sweep.stop", "start and stop must differ"));
        }
        self.physical.validate()?;
        self.feedback.validate()
    }

    /// Uniform samples from start to stop inclusive.
    pub fn values(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / last
                }
            })
            .collect()
    }
}

/// Branch-matched pole trajectories.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocusTrace {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
    pub poles: Vec<[Complex64; 3]>,
    pub residues: Vec<[Complex64; 3]>,
    /// Slowest decay rate `max Re pᵢ` at each step.
    pub metric: Vec<f64>,
}

impl LocusTrace {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// One branch across every step.
    pub fn branch(&self, index: usize) -> Vec<Complex64> {
        self.poles.iter().map(|p| p[index]).collect()
    }

    /// Whether each matched step moved less than the smallest pole gap at that step.
    pub fn is_branch_continuous(&self) -> bool {
        self.poles.windows(2).all(|w| {
            let gap = min_gap(&w[1]);
            (0..3).all(|i| (w[1][i] - w[0][i]).norm() < gap)
        })
    }
}

fn min_gap(p: &[Complex64; 3]) -> f64 {
    (p[0] - p[1]).norm().min((p[0] - p[2]).norm()).min((p[1] - p[2]).norm())
}

pub const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Total displacement when `next[perm[i]]` continues branch `i`.
pub fn displacement(prev: &[Complex64; 3], next: &[Complex64; 3], perm: &[usize; 3]) -> f64 {
    (0..3).map(|i| (next[perm[i]] - prev[i]).norm()).sum()
}

/// The assignment of `next` onto the branches of `prev` with least total displacement.
pub fn best_assignment(prev: &[Complex64; 3], next: &[Complex64; 3]) -> [usize; 3] {
    let mut best = PERMUTATIONS[0];
    let mut best_cost = f64::INFINITY;
    for perm in PERMUTATIONS {
        let cost = displacement(prev, next, &perm);
        if cost < best_cost {
            best_cost = cost;
            best = perm;
        }
    }
    best
}

/// Solves the poles at each sweep value and links them into continuous branches.
///
/// The first step uses the [`solve_poles`] ordering; later steps are matched to
/// their predecessor.
pub fn sweep_poles(spec: &SweepSpec) -> Result<LocusTrace> {
    spec.validate()?;
    let values = spec.values();
    let mut poles: Vec<[Complex64; 3]> = Vec::with_capacity(values.len());
    let mut all_residues = Vec::with_capacity(values.len());
    for &v in &values {
        let (p, f) = spec.parameter.apply(v, &spec.physical, &spec.feedback)?;
        let coeffs = cubic_coefficients(&p, &f);
        let degenerate = |e: Error| {
            if e.is_degeneracy() {
                Error::DegenerateSweep {
                    parameter: spec.parameter.name(),
                    value: v,
                }
            } else {
                e
            }
        };
        let found = solve_poles(&coeffs).map_err(degenerate)?;
        let q = residues(&coeffs, &found).map_err(degenerate)?;
        let (step_poles, step_q) = match poles.last() {
            None => (found, q),
            Some(prev) => {
                let perm = best_assignment(prev, &found);
                (perm.map(|j| found[j]), perm.map(|j| q[j]))
            }
        };
        poles.push(step_poles);
        all_residues.push(step_q);
    }
    let metric = poles
        .iter()
        .map(|p| p.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    Ok(LocusTrace {
        parameter: spec.parameter,
        values,
        poles,
        residues: all_residues,
        metric,
    })
}

/// Per-step slowest decay rate `m(v) = max Re pᵢ(v)`; closer to 0 means longer-lived coherence.
pub fn decoherence_metric(trace: &LocusTrace) -> Vec<f64> {
    trace.metric.clone()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeRow {
    pub value: f64,
    /// `min |g(t)|` on the sampled grid over [0, T].
    pub min_abs: f64,
    /// `|g(T)|`.
    pub final_abs: f64,
}

/// `min |g|` and `|g(T)|` for each value of `parameter`, from the closed-form g(t).
pub fn amplitude_table(
    parameter: SweepParameter,
    values: &[f64],
    physical: &PhysicalParams,
    feedback: &FeedbackParams,
    t_final: f64,
    dt: f64,
) -> Result<Vec<AmplitudeRow>> {
    if !(dt > 0.0) || !(t_final > 0.0) {
        return Err(Error::invalid("dt", "dt and T must be > 0"));
    }
    let steps = (t_final / dt).round() as usize;
    values
        .iter()
        .map(|&v| {
            let (p, f) = parameter.apply(v, physical, feedback)?;
            let g = GreensAnalytic::new(&p, &f)?;
            let mut min_abs = f64::INFINITY;
            for n in 0..=steps {
                min_abs = min_abs.min(g.evaluate(n as f64 * dt).norm());
            }
            Ok(AmplitudeRow {
                value: v,
                min_abs,
                final_abs: g.evaluate(steps as f64 * dt).norm(),
            })
        })
        .collect()
}

/// [`amplitude_table`] over feedback strengths r at fixed θ.
pub fn amplitude_comparison(
    params: &PhysicalParams,
    r_values: &[f64],
    theta: f64,
    t_final: f64,
    dt: f64,
) -> Result<Vec<AmplitudeRow>> {
    let fb = FeedbackParams::new(0.0, theta)?;
    amplitude_table(SweepParameter::R, r_values, params, &fb, t_final, dt)
}
