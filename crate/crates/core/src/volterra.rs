//! Time-domain solvers for the amplitude equation
//!
//! ```text
//! ġ(t) = −iω_S g(t) − ∫₀ᵗ M(t − τ) g(τ) dτ,   g(0) = 1,
//! ```
//!
//! used as oracles for the pole/residue solution. The two schemes share
//! nothing beyond the kernel description:
//!
//! * [`solve_quadrature`] only samples M(t) and discretises the history
//!   integral with the trapezoid rule (second order);
//! * [`solve_exponential_ode`] uses the exponential-sum structure of M to
//!   close the dynamics into a small linear ODE, stepped with classical RK4
//!   (fourth order).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::KernelModel;

/// Largest admissible `dt · (|ω_S| + √|M(0)|)`.
pub const RESOLUTION_LIMIT: f64 = 0.2;

/// Complex samples on a uniform grid `t_n = n·dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub dt: f64,
    pub values: Vec<Complex64>,
}

impl TimeSeries {
    pub fn new(dt: f64, values: Vec<Complex64>) -> Self {
        Self { dt, values }
    }

    /// Samples `f(n·dt)` for n = 0..=steps.
    pub fn from_fn(dt: f64, steps: usize, f: impl Fn(f64) -> Complex64) -> Self {
        Self {
            dt,
            values: (0..=steps).map(|n| f(n as f64 * dt)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn time(&self, n: usize) -> f64 {
        n as f64 * self.dt
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.values.len()).map(|n| self.time(n))
    }

    pub fn final_time(&self) -> f64 {
        self.time(self.values.len().saturating_sub(1))
    }

    pub fn abs_max(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn abs_min(&self) -> f64 {
        self.values
            .iter()
            .map(|v| v.norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Every `stride`-th sample, as a series with step `stride·dt`.
    pub fn decimate(&self, stride: usize) -> TimeSeries {
        TimeSeries {
            dt: self.dt * stride as f64,
            values: self.values.iter().step_by(stride).copied().collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Analytic,
    Quadrature,
    ExponentialOde,
    Richardson,
}

impl Scheme {
    /// Nominal global order of accuracy.
    pub fn order(self) -> Option<f64> {
        match self {
            Scheme::Quadrature => Some(2.0),
            Scheme::ExponentialOde => Some(4.0),
            Scheme::Analytic | Scheme::Richardson => None,
        }
    }
}

/// Deviation of one solution from another on a shared grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverReport {
    pub scheme: Scheme,
    pub reference: Scheme,
    pub dt: f64,
    pub max_deviation: f64,
    /// `√(dt Σ |aₙ − bₙ|²)`.
    pub l2_deviation: f64,
    /// Observed order from this and the previous (2·dt) refinement level.
    pub order: Option<f64>,
}

/// Number of steps covering [0, t_final] and the resolution guard.
fn steps_for(kernel: &KernelModel, omega_s: f64, dt: f64, t_final: f64) -> Result<usize> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::invalid("dt", "must be finite and > 0"));
    }
    if !(t_final >= dt) || !t_final.is_finite() {
        return Err(Error::invalid("T", "must be finite and >= dt"));
    }
    let rate = omega_s.abs() + kernel.total_amplitude().norm().sqrt();
    if dt * rate > RESOLUTION_LIMIT {
        return Err(Error::Resolution {
            dt,
            max_dt: RESOLUTION_LIMIT / rate,
        });
    }
    Ok((t_final / dt).round() as usize)
}

// 4-point Gauss-Legendre nodes and weights on [-1, 1]
const GL_NODES: [f64; 4] = [
    -0.861_136_311_594_052_6,
    -0.339_981_043_584_856_3,
    0.339_981_043_584_856_3,
    0.861_136_311_594_052_6,
];
const GL_WEIGHTS: [f64; 4] = [
    0.347_854_845_137_453_9,
    0.652_145_154_862_546_1,
    0.652_145_154_862_546_1,
    0.347_854_845_137_453_9,
];

/// Trapezoidal Volterra solver.
///
/// The free rotation is removed first, `g(t) = e^{−iω_S t} u(t)`, and the
/// equation integrated once in time, giving the second-kind equation
///
/// ```text
/// u(t) = 1 − ∫₀ᵗ L(t − τ) u(τ) dτ,   L(t) = ∫₀ᵗ M(σ) e^{iω_S σ} dσ.
/// ```
///
/// The integrated kernel `L` is accumulated from kernel samples with
/// Gauss-Legendre panels (error far below the trapezoid error), and the
/// convolution is discretised with the composite trapezoid rule. Since
/// `L(0) = 0` the endpoint weight vanishes and each step is explicit. The
/// history sum makes the cost O(N²).
pub fn solve_quadrature(
    kernel: &KernelModel,
    omega_s: f64,
    dt: f64,
    t_final: f64,
) -> Result<TimeSeries> {
    let steps = steps_for(kernel, omega_s, dt, t_final)?;
    let rotated = |t: f64| kernel.eval_unchecked(t) * Complex64::from_polar(1.0, omega_s * t);

    let mut integrated = Vec::with_capacity(steps + 1);
    let mut acc = Complex64::new(0.0, 0.0);
    integrated.push(acc);
    for n in 0..steps {
        let mid = (n as f64 + 0.5) * dt;
        let panel: Complex64 = GL_NODES
            .iter()
            .zip(GL_WEIGHTS)
            .map(|(x, w)| w * rotated(mid + 0.5 * dt * x))
            .sum();
        acc += 0.5 * dt * panel;
        integrated.push(acc);
    }

    let mut u = Vec::with_capacity(steps + 1);
    u.push(Complex64::new(1.0, 0.0));
    for n in 1..=steps {
        // ½ L_n u_0 + Σ_{j=1}^{n−1} L_{n−j} u_j  (+ ½ L_0 u_n, which is zero)
        let history: Complex64 = integrated[1..n]
            .iter()
            .rev()
            .zip(&u[1..n])
            .map(|(l, v)| l * v)
            .sum();
        let conv = 0.5 * integrated[n] * u[0] + history;
        u.push(Complex64::new(1.0, 0.0) - dt * conv);
    }

    let values = u
        .iter()
        .enumerate()
        .map(|(n, v)| v * Complex64::from_polar(1.0, -omega_s * n as f64 * dt))
        .collect();
    Ok(TimeSeries::new(dt, values))
}

/// Auxiliary-variable solver.
///
/// With `yₖ(t) = ∫₀ᵗ cₖ e^{pₖ(t−τ)} g(τ) dτ` the history integral is `Σ yₖ`,
/// and `(g, y₁, …, y_K)` obeys the linear system
///
/// ```text
/// ġ = −iω_S g − Σ yₖ,   ẏₖ = pₖ yₖ + cₖ g,   g(0) = 1, yₖ(0) = 0,
/// ```
///
/// stepped here with classical fourth-order Runge-Kutta.
pub fn solve_exponential_ode(
    kernel: &KernelModel,
    omega_s: f64,
    dt: f64,
    t_final: f64,
) -> Result<TimeSeries> {
    let steps = steps_for(kernel, omega_s, dt, t_final)?;
    let dim = kernel.terms.len() + 1;
    let rot = Complex64::new(0.0, -omega_s);
    let rhs = |state: &[Complex64], out: &mut [Complex64]| {
        let g = state[0];
        let mut dg = rot * g;
        for (k, term) in kernel.terms.iter().enumerate() {
            let y = state[k + 1];
            dg -= y;
            out[k + 1] = term.rate * y + term.amplitude * g;
        }
        out[0] = dg;
    };

    let zero = Complex64::new(0.0, 0.0);
    let mut state = vec![zero; dim];
    state[0] = Complex64::new(1.0, 0.0);
    let mut k1 = vec![zero; dim];
    let mut k2 = vec![zero; dim];
    let mut k3 = vec![zero; dim];
    let mut k4 = vec![zero; dim];
    let mut tmp = vec![zero; dim];

    let mut values = Vec::with_capacity(steps + 1);
    values.push(state[0]);
    for _ in 0..steps {
        rhs(&state, &mut k1);
        for i in 0..dim {
            tmp[i] = state[i] + 0.5 * dt * k1[i];
        }
        rhs(&tmp, &mut k2);
        for i in 0..dim {
            tmp[i] = state[i] + 0.5 * dt * k2[i];
        }
        rhs(&tmp, &mut k3);
        for i in 0..dim {
            tmp[i] = state[i] + dt * k3[i];
        }
        rhs(&tmp, &mut k4);
        for i in 0..dim {
            state[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        values.push(state[0]);
    }
    Ok(TimeSeries::new(dt, values))
}

fn check_same_grid(a: &TimeSeries, b: &TimeSeries) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::GridMismatch(format!(
            "{} vs {} samples",
            a.len(),
            b.len()
        )));
    }
    if (a.dt - b.dt).abs() > 1e-12 * a.dt.abs().max(b.dt.abs()) {
        return Err(Error::GridMismatch(format!("dt {} vs {}", a.dt, b.dt)));
    }
    Ok(())
}

/// Max and L² deviation between two series on the same grid.
pub fn compare_solutions(
    a: &TimeSeries,
    a_scheme: Scheme,
    b: &TimeSeries,
    b_scheme: Scheme,
) -> Result<SolverReport> {
    check_same_grid(a, b)?;
    let mut max_dev: f64 = 0.0;
    let mut sq = 0.0;
    for (x, y) in a.values.iter().zip(&b.values) {
        let d = (x - y).norm();
        max_dev = max_dev.max(d);
        sq += d * d;
    }
    Ok(SolverReport {
        scheme: a_scheme,
        reference: b_scheme,
        dt: a.dt,
        max_deviation: max_dev,
        l2_deviation: (a.dt * sq).sqrt(),
        order: None,
    })
}

/// Observed order `log₂(e_{k−1}/e_k)` between consecutive halvings.
pub fn observed_order(coarse_error: f64, fine_error: f64) -> f64 {
    (coarse_error / fine_error).log2()
}

/// Runs `scheme` at `dt0, dt0/2, …` (`levels` solves) and reports each level
/// against `reference`, sampled on that level's grid.
pub fn convergence_study(
    scheme: Scheme,
    kernel: &KernelModel,
    omega_s: f64,
    dt0: f64,
    levels: usize,
    t_final: f64,
    reference: impl Fn(f64) -> Complex64,
) -> Result<Vec<SolverReport>> {
    let solve = match scheme {
        Scheme::Quadrature => solve_quadrature,
        Scheme::ExponentialOde => solve_exponential_ode,
        other => {
            return Err(Error::invalid(
                "scheme",
                format!("{other:?} is not a time-stepping scheme"),
            ))
        }
    };
    let mut reports: Vec<SolverReport> = Vec::with_capacity(levels);
    let mut dt = dt0;
    for _ in 0..levels {
        let series = solve(kernel, omega_s, dt, t_final)?;
        let exact = TimeSeries::from_fn(dt, series.len() - 1, &reference);
        let mut report = compare_solutions(&series, scheme, &exact, Scheme::Analytic)?;
        if let Some(prev) = reports.last() {
            report.order = Some(observed_order(prev.max_deviation, report.max_deviation));
        }
        reports.push(report);
        dt *= 0.5;
    }
    Ok(reports)
}

/// Self-convergence order from solutions at dt, dt/2 and dt/4, with no
/// reference solution: `log₂(|S_h − S_{h/2}| / |S_{h/2} − S_{h/4}|)` on the
/// coarse grid.
pub fn self_convergence_order(
    coarse: &TimeSeries,
    mid: &TimeSeries,
    fine: &TimeSeries,
) -> Result<f64> {
    let mid_c = mid.decimate(2);
    let fine_c = fine.decimate(4);
    let a = compare_solutions(coarse, Scheme::Quadrature, &mid_c, Scheme::Quadrature)?;
    let b = compare_solutions(&mid_c, Scheme::Quadrature, &fine_c, Scheme::Quadrature)?;
    Ok(observed_order(a.max_deviation, b.max_deviation))
}

/// Richardson extrapolation `(2^p S_{h/2} − S_h)/(2^p − 1)` on the coarse grid.
pub fn richardson(coarse: &TimeSeries, fine: &TimeSeries, order: f64) -> Result<TimeSeries> {
    let fine_c = fine.decimate(2);
    check_same_grid(coarse, &fine_c)?;
    let w = 2f64.powf(order);
    let values = coarse
        .values
        .iter()
        .zip(&fine_c.values)
        .map(|(c, f)| (w * f - c) / (w - 1.0))
        .collect();
    Ok(TimeSeries::new(coarse.dt, values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{closed_loop_kernel, open_loop_kernel};
    use crate::params::{FeedbackParams, PhysicalParams};

    fn phase(omega_s: f64) -> impl Fn(f64) -> Complex64 {
        move |t| Complex64::from_polar(1.0, -omega_s * t)
    }

    #[test]
    fn zero_kernel_is_pure_phase() {
        let k = open_loop_kernel(&PhysicalParams::default().with_eta(0.0));
        let q = solve_quadrature(&k, 10.0, 1e-3, 5.0).unwrap();
        let exact = TimeSeries::from_fn(1e-3, q.len() - 1, phase(10.0));
        let rq = compare_solutions(&q, Scheme::Quadrature, &exact, Scheme::Analytic).unwrap();
        let o = solve_exponential_ode(&k, 10.0, 2.5e-4, 5.0).unwrap();
        let exact = TimeSeries::from_fn(2.5e-4, o.len() - 1, phase(10.0));
        let ro = compare_solutions(&o, Scheme::ExponentialOde, &exact, Scheme::Analytic).unwrap();
        assert!(rq.max_deviation < 1e-8, "{rq:?}");
        assert!(ro.max_deviation < 1e-10, "{ro:?}");
        assert_eq!(q.values[0], Complex64::new(1.0, 0.0));
        assert_eq!(o.values[0], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn resolution_guard_gives_hint() {
        let k = open_loop_kernel(&PhysicalParams::default());
        match solve_quadrature(&k, 10.0, 0.05, 1.0) {
            Err(Error::Resolution { max_dt, .. }) => {
                assert!((max_dt - 0.2 / (10.0 + 0.12f64.sqrt())).abs() < 1e-15)
            }
            other => panic!("{other:?}"),
        }
        assert!(solve_exponential_ode(&k, 10.0, 0.05, 1.0).is_err());
        assert!(solve_exponential_ode(&k, 10.0, 1e-3, 1e-4).is_err());
        assert!(solve_quadrature(&k, 10.0, -1e-3, 1.0).is_err());
    }

    #[test]
    fn identical_series_have_zero_deviation() {
        let s = TimeSeries::from_fn(0.1, 20, phase(3.0));
        let r = compare_solutions(&s, Scheme::Analytic, &s, Scheme::Analytic).unwrap();
        assert_eq!(r.max_deviation, 0.0);
        assert_eq!(r.l2_deviation, 0.0);
        let short = TimeSeries::from_fn(0.1, 10, phase(3.0));
        assert!(matches!(
            compare_solutions(&s, Scheme::Analytic, &short, Scheme::Analytic),
            Err(Error::GridMismatch(_))
        ));
        let other_dt = TimeSeries::from_fn(0.2, 20, phase(3.0));
        assert!(compare_solutions(&s, Scheme::Analytic, &other_dt, Scheme::Analytic).is_err());
    }

    #[test]
    fn solvers_agree_on_a_short_horizon() {
        let p = PhysicalParams::default();
        let k = closed_loop_kernel(&p, &FeedbackParams::new(1.0, 0.0).unwrap());
        let q = solve_quadrature(&k, p.omega_s, 2e-3, 10.0).unwrap();
        let o = solve_exponential_ode(&k, p.omega_s, 2e-3, 10.0).unwrap();
        let r = compare_solutions(&q, Scheme::Quadrature, &o, Scheme::ExponentialOde).unwrap();
        assert!(r.max_deviation < 1e-6, "{r:?}");
    }

    #[test]
    fn richardson_sharpens_quadrature() {
        let p = PhysicalParams::default();
        let k = open_loop_kernel(&p);
        let coarse = solve_quadrature(&k, p.omega_s, 0.01, 5.0).unwrap();
        let fine = solve_quadrature(&k, p.omega_s, 0.005, 5.0).unwrap();
        let g = crate::greens::GreensAnalytic::new(&p, &FeedbackParams::open_loop()).unwrap();
        let exact = TimeSeries::from_fn(0.01, coarse.len() - 1, |t| g.evaluate(t));
        let rich = richardson(&coarse, &fine, 2.0).unwrap();
        let e_coarse = compare_solutions(&coarse, Scheme::Quadrature, &exact, Scheme::Analytic)
            .unwrap()
            .max_deviation;
        let e_rich = compare_solutions(&rich, Scheme::Richardson, &exact, Scheme::Analytic)
            .unwrap()
            .max_deviation;
        assert!(e_rich < 0.1 * e_coarse, "{e_rich} vs {e_coarse}");
    }
}
