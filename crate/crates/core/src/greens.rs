//! Laplace-domain Green's function `G(s) = 1/(s + iω_S + M(s))` for the
//! two-term Lorentzian kernel, its three poles and residues, and the
//! closed-form amplitude `g(t) = Σ qᵢ e^{pᵢ t}`.
//!
//! With the split kernel the Green's function is the rational function
//!
//! ```text
//!            s² + α₁ s + α₂
//! G(s) = ------------------------
//!        s³ + β₁ s² + β₂ s + β₃
//! ```
//!
//! whose denominator is `(s + iω_S)(s² + α₁ s + α₂) + ηh (s + z₀ − iγ cos θ sin α)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cubic::{quadratic_roots, MonicCubic};
use crate::error::{Error, Result};
use crate::kernel::{branch_asymmetry, effective_splitting, kernel_center};
use crate::params::{FeedbackParams, PhysicalParams};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Poles closer than this (μeV) are treated as repeated.
pub const DEGENERACY_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicCoefficients {
    pub alpha1: Complex64,
    pub alpha2: Complex64,
    pub beta1: Complex64,
    pub beta2: Complex64,
    pub beta3: Complex64,
    /// ω_S, so that β₁ = α₁ + iω_S.
    pub omega_s: f64,
    /// ηh, so that β₂ = α₂ + iω_S α₁ + ηh.
    pub coupling: f64,
}

impl CubicCoefficients {
    pub fn denominator(&self) -> MonicCubic {
        MonicCubic {
            b1: self.beta1,
            b2: self.beta2,
            b3: self.beta3,
        }
    }

    pub fn numerator(&self, s: Complex64) -> Complex64 {
        (s + self.alpha1) * s + self.alpha2
    }

    /// G(s) from the rational form.
    pub fn greens(&self, s: Complex64) -> Complex64 {
        self.numerator(s) / self.denominator().eval(s)
    }

    /// `|p³ + β₁p² + β₂p + β₃|` relative to `max(1, |β₃|)`.
    pub fn relative_residual(&self, s: Complex64) -> f64 {
        self.denominator().eval(s).norm() / self.beta3.norm().max(1.0)
    }
}

pub fn cubic_coefficients(params: &PhysicalParams, fb: &FeedbackParams) -> CubicCoefficients {
    let z0 = kernel_center(params);
    let gamma = effective_splitting(fb, params);
    let eh = params.coupling();
    let ws = params.omega_s;
    let asym = branch_asymmetry(fb, params);
    let quad = z0 * z0 + gamma * gamma;
    CubicCoefficients {
        alpha1: 2.0 * z0,
        alpha2: quad,
        beta1: 2.0 * z0 + I * ws,
        beta2: quad + eh + 2.0 * I * ws * z0,
        beta3: eh * z0 + I * ws * quad - I * eh * gamma * asym,
        omega_s: ws,
        coupling: eh,
    }
}

/// Orders poles by descending real part, ties by ascending imaginary part.
pub fn order_poles(poles: &mut [Complex64]) {
    // insertion sort; the tie tolerance makes the comparison non-transitive in
    // principle, which slice::sort is not required to tolerate
    for i in 1..poles.len() {
        let mut j = i;
        while j > 0 && comes_before(poles[j], poles[j - 1]) {
            poles.swap(j, j - 1);
            j -= 1;
        }
    }
}

fn comes_before(a: Complex64, b: Complex64) -> bool {
    let tie = 1e-12 * (1.0 + a.re.abs().max(b.re.abs()));
    if (a.re - b.re).abs() > tie {
        a.re > b.re
    } else {
        a.im < b.im
    }
}

/// Smallest pairwise separation, with the offending pair.
fn closest_pair(poles: &[Complex64; 3]) -> (f64, Complex64, Complex64) {
    let pairs = [(0, 1), (0, 2), (1, 2)];
    pairs
        .iter()
        .map(|&(i, j)| ((poles[i] - poles[j]).norm(), poles[i], poles[j]))
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("three poles")
}

/// The three poles of G(s), ordered so that `p₁` is the slowest-decaying.
///
/// For ηh = 0 the denominator factors exactly as `(s + iω_S)(s² + α₁ s + α₂)`
/// and the factored roots are returned.
pub fn solve_poles(coeffs: &CubicCoefficients) -> Result<[Complex64; 3]> {
    let mut poles = if coeffs.coupling == 0.0 {
        let (a, b) = quadratic_roots(coeffs.alpha1, coeffs.alpha2);
        [Complex64::new(0.0, -coeffs.omega_s), a, b]
    } else {
        coeffs.denominator().roots()
    };
    order_poles(&mut poles);
    let (separation, a, b) = closest_pair(&poles);
    if separation < DEGENERACY_TOLERANCE {
        return Err(Error::DegeneratePoles { a, b, separation });
    }
    Ok(poles)
}

/// Partial-fraction weights `qᵢ = N(pᵢ) / Π_{j≠i}(pᵢ − pⱼ)`.
pub fn residues(coeffs: &CubicCoefficients, poles: &[Complex64; 3]) -> Result<[Complex64; 3]> {
    let (separation, a, b) = closest_pair(poles);
    if separation < DEGENERACY_TOLERANCE {
        return Err(Error::DegeneratePoles { a, b, separation });
    }
    let [p1, p2, p3] = *poles;
    Ok([
        coeffs.numerator(p1) / ((p1 - p2) * (p1 - p3)),
        coeffs.numerator(p2) / ((p2 - p1) * (p2 - p3)),
        coeffs.numerator(p3) / ((p3 - p1) * (p3 - p2)),
    ])
}

/// One exponential mode `residue · e^{pole · t}` of g(t).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mode {
    pub pole: Complex64,
    pub residue: Complex64,
}

/// Closed-form Green's function as a sum of exponential modes.
///
/// Normally three modes (poles ordered as in [`solve_poles`]); the Markovian
/// constructor yields a single mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GreensAnalytic {
    pub modes: Vec<Mode>,
}

impl GreensAnalytic {
    pub fn from_coefficients(coeffs: &CubicCoefficients) -> Result<Self> {
        let poles = solve_poles(coeffs)?;
        let q = residues(coeffs, &poles)?;
        Ok(Self {
            modes: poles
                .iter()
                .zip(q)
                .map(|(&pole, residue)| Mode { pole, residue })
                .collect(),
        })
    }

    pub fn new(params: &PhysicalParams, fb: &FeedbackParams) -> Result<Self> {
        Self::from_coefficients(&cubic_coefficients(params, fb))
    }

    /// Single-pole Green's function of a constant (Markovian) kernel γ/2.
    pub fn markovian(gamma: f64, omega_s: f64) -> Result<Self> {
        Ok(Self {
            modes: vec![Mode {
                pole: markovian_pole(gamma, omega_s)?,
                residue: Complex64::new(1.0, 0.0),
            }],
        })
    }

    pub fn poles(&self) -> Vec<Complex64> {
        self.modes.iter().map(|m| m.pole).collect()
    }

    pub fn residues(&self) -> Vec<Complex64> {
        self.modes.iter().map(|m| m.residue).collect()
    }

    pub fn residue_sum(&self) -> Complex64 {
        self.modes.iter().map(|m| m.residue).sum()
    }

    /// Slowest decay rate, `max Re pᵢ`.
    pub fn slow_rate(&self) -> f64 {
        self.modes
            .iter()
            .map(|m| m.pole.re)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// g(t). At t = 0 this is exactly the residue sum.
    pub fn evaluate(&self, t: f64) -> Complex64 {
        if t == 0.0 {
            return self.residue_sum();
        }
        self.modes
            .iter()
            .map(|m| m.residue * (m.pole * t).exp())
            .sum()
    }

    /// g at `t_n = n·dt`, n = 0..=steps.
    pub fn sample(&self, dt: f64, steps: usize) -> Vec<Complex64> {
        (0..=steps).map(|n| self.evaluate(n as f64 * dt)).collect()
    }
}

/// Large-r limits of the poles: `−iω_S` and `−h ∓ i∞`.
pub fn asymptotic_poles(params: &PhysicalParams) -> [Complex64; 3] {
    [
        Complex64::new(0.0, -params.omega_s),
        Complex64::new(-params.h, f64::NEG_INFINITY),
        Complex64::new(-params.h, f64::INFINITY),
    ]
}

/// Pole `−γ/2 − iω_S` of `1/(s + iω_S + γ/2)`.
pub fn markovian_pole(gamma: f64, omega_s: f64) -> Result<Complex64> {
    if !(gamma >= 0.0) || !gamma.is_finite() {
        return Err(Error::invalid("gamma", "damping rate must be finite and >= 0"));
    }
    Ok(Complex64::new(-0.5 * gamma, -omega_s))
}

/// Poles from the Cardano-type closed form
///
/// ```text
/// p₁ = −β₁/3 + w/(3∛2) − ∛2 A/(3w),   p₂,₃ = −β₁/3 + w ε±/(3∛2) − ∛2 A/(3w ε±)
/// ```
///
/// with `A = 3β₂ − β₁²`, `B = 9(β₁β₂ − 3β₃) − 2β₁³`, `w³ = B + √(4A³ + B²)` and
/// ε± = e^{±2πi/3}. `branch` (0, 1 or 2) picks the cube root `w` as the
/// principal root times `e^{2πi·branch/3}`; the returned triple keeps the
/// `(p₁, p₂, p₃)` labelling of the formula.
pub fn closed_form_poles(coeffs: &CubicCoefficients, branch: u32) -> [Complex64; 3] {
    let b1 = coeffs.beta1;
    let a = 3.0 * coeffs.beta2 - b1 * b1;
    let b = 9.0 * (coeffs.beta2 * b1 - 3.0 * coeffs.beta3) - 2.0 * b1 * b1 * b1;
    let w3 = b + (4.0 * a * a * a + b * b).sqrt();
    let third = 2.0 * std::f64::consts::PI / 3.0;
    let w = w3.powf(1.0 / 3.0) * Complex64::from_polar(1.0, third * f64::from(branch % 3));
    let cbrt2 = 2f64.cbrt();
    let shift = -b1 / 3.0;
    let term = |rot: Complex64| {
        let wr = w * rot;
        shift + wr / (3.0 * cbrt2) - cbrt2 * a / (3.0 * wr)
    };
    // −e^{i(φ∓π/3)} = e^{iφ} e^{±2πi/3}
    [
        term(Complex64::new(1.0, 0.0)),
        term(Complex64::from_polar(1.0, third)),
        term(Complex64::from_polar(1.0, -third)),
    ]
}
