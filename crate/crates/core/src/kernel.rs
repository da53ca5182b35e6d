//! Lorentzian noise spectra and the memory kernels they induce, with and
//! without the source-drain junction.
//!
//! Both the open-loop kernel M₀ and the feedback-split kernel M = M⁺ + M⁻
//! reduce to two damped exponentials for a Lorentzian spectrum, so a single
//! [`KernelModel`] (a finite sum `Σ cₖ e^{pₖ t}`) represents either.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{check_finite, FeedbackParams, PhysicalParams};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Lorentzian spectral density `η h² / ((ω − ω_S)² + h²)`.
pub fn lorentzian_spectrum(omega: f64, params: &PhysicalParams) -> Result<f64> {
    check_finite("omega", omega)?;
    let detuning = omega - params.omega_s;
    Ok(params.eta * params.h * params.h / (detuning * detuning + params.h * params.h))
}

/// Mixing angle α = arctan(r/δ) of the junction-coupled lead modes, in [0, π/2].
///
/// At r = δ = 0 the feedback vanishes and α is taken to be 0.
pub fn mixing_angle(fb: &FeedbackParams, params: &PhysicalParams) -> f64 {
    if fb.r == 0.0 {
        return 0.0;
    }
    if params.delta == 0.0 {
        return FRAC_PI_2;
    }
    (fb.r / params.delta).atan()
}

/// Splitting γ = √(δ² + r²) of the hybridised lead modes.
pub fn effective_splitting(fb: &FeedbackParams, params: &PhysicalParams) -> f64 {
    params.delta.hypot(fb.r)
}

/// The spectral weight asymmetry cos θ · sin α between the two kernel branches.
pub fn branch_asymmetry(fb: &FeedbackParams, params: &PhysicalParams) -> f64 {
    fb.theta.cos() * mixing_angle(fb, params).sin()
}

/// One exponential `amplitude · e^{rate · t}` of a memory kernel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelTerm {
    pub amplitude: Complex64,
    pub rate: Complex64,
}

/// Memory kernel as a sum of complex exponentials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelModel {
    pub terms: Vec<KernelTerm>,
}

impl KernelModel {
    pub fn new(terms: Vec<KernelTerm>) -> Result<Self> {
        for term in &terms {
            if !(term.rate.re < 0.0) {
                return Err(Error::invalid(
                    "rate",
                    format!("kernel rate {} must have negative real part", term.rate),
                ));
            }
        }
        Ok(Self { terms })
    }

    /// M(0) = Σ cₖ.
    pub fn total_amplitude(&self) -> Complex64 {
        self.terms.iter().map(|t| t.amplitude).sum()
    }

    /// Slowest decay of any term, `max Re pₖ`; the Laplace integral converges to its right.
    pub fn abscissa(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.rate.re)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// M(t) for t ≥ 0.
    pub fn at_time(&self, t: f64) -> Result<Complex64> {
        if t < 0.0 || t.is_nan() {
            return Err(Error::NegativeTime(t));
        }
        Ok(self.eval_unchecked(t))
    }

    pub(crate) fn eval_unchecked(&self, t: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|term| term.amplitude * (term.rate * t).exp())
            .sum()
    }

    /// Laplace transform `M(s) = Σ cₖ / (s − pₖ)`.
    ///
    /// The defining integral converges for `Re s > abscissa()`; to the left of
    /// it the rational expression is its analytic continuation. Hitting a rate
    /// exactly is reported as a singular evaluation.
    pub fn laplace(&self, s: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for term in &self.terms {
            let gap = s - term.rate;
            if gap.norm() <= f64::EPSILON * term.rate.norm().max(1.0) {
                if term.amplitude == Complex64::new(0.0, 0.0) {
                    continue;
                }
                return Err(Error::SingularEvaluation { rate: term.rate });
            }
            acc += term.amplitude / gap;
        }
        Ok(acc)
    }
}

/// Open-loop kernel `M₀(t) = ½ηh e^{−(h+iω_S)t} + ½ηh e^{−(h+i(ω_S−2δ))t}`.
pub fn open_loop_kernel(params: &PhysicalParams) -> KernelModel {
    let half = Complex64::new(0.5 * params.coupling(), 0.0);
    let source = Complex64::new(-params.h, -params.omega_s);
    let drain = Complex64::new(-params.h, -(params.omega_s - 2.0 * params.delta));
    KernelModel {
        terms: vec![
            KernelTerm {
                amplitude: half,
                rate: source,
            },
            KernelTerm {
                amplitude: half,
                rate: drain,
            },
        ],
    }
}

/// Centre `z₀ = h + i(ω_S − δ)` of the closed-loop kernel poles.
pub fn kernel_center(params: &PhysicalParams) -> Complex64 {
    Complex64::new(params.h, params.omega_s - params.delta)
}

/// Feedback-split kernel: amplitudes `½ηh(1 ± cos θ sin α)`, rates `−(z₀ ± iγ)`.
///
/// At r = 0 this is term-for-term [`open_loop_kernel`] (the `+` branch is the
/// source lead, the `−` branch the drain).
pub fn closed_loop_kernel(params: &PhysicalParams, fb: &FeedbackParams) -> KernelModel {
    if fb.r == 0.0 {
        // α = 0 and γ = δ; skip the z₀ ± iδ round trip so the terms match bit for bit
        return open_loop_kernel(params);
    }
    let eh = params.coupling();
    let asym = branch_asymmetry(fb, params);
    let gamma = effective_splitting(fb, params);
    let z0 = kernel_center(params);
    KernelModel {
        terms: vec![
            KernelTerm {
                amplitude: Complex64::new(0.5 * eh * (1.0 + asym), 0.0),
                rate: -(z0 + I * gamma),
            },
            KernelTerm {
                amplitude: Complex64::new(0.5 * eh * (1.0 - asym), 0.0),
                rate: -(z0 - I * gamma),
            },
        ],
    }
}

/// Feedback-modulated spectra `(J⁺(ω), J⁻(ω)) = J(ω)(1 ± cos θ sin α)` for
/// equally coupled leads.
pub fn split_spectra(
    omega: f64,
    params: &PhysicalParams,
    fb: &FeedbackParams,
) -> Result<(f64, f64)> {
    let j = lorentzian_spectrum(omega, params)?;
    let asym = branch_asymmetry(fb, params);
    Ok((j * (1.0 + asym), j * (1.0 - asym)))
}

/// Propagator `Φ(ω, t) = exp(−it [[ω_B, f*], [f, ω_C]])` of a junction-coupled
/// source/drain mode pair with ω_B = ω and ω_C = ω − 2δ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionMatrix(pub [[Complex64; 2]; 2]);

impl TransitionMatrix {
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.0[row][col]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Self([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self(out)
    }

    /// Frobenius norm of Φ†Φ − I.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.adjoint().mul(self);
        let mut acc = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let target = if i == j { 1.0 } else { 0.0 };
                acc += (p.0[i][j] - target).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Both eigenvalues from the characteristic quadratic.
    pub fn eigenvalues(&self) -> [Complex64; 2] {
        let m = &self.0;
        let tr = m[0][0] + m[1][1];
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let disc = (tr * tr - 4.0 * det).sqrt();
        [(tr + disc) * 0.5, (tr - disc) * 0.5]
    }
}

/// Eigenfrequencies `λ± = ω − δ ± √(δ² + r²)` of the coupled mode pair.
pub fn mode_eigenfrequencies(omega: f64, params: &PhysicalParams, fb: &FeedbackParams) -> (f64, f64) {
    let gamma = effective_splitting(fb, params);
    let center = omega - params.delta;
    (center + gamma, center - gamma)
}

pub fn transition_matrix(
    omega: f64,
    t: f64,
    params: &PhysicalParams,
    fb: &FeedbackParams,
) -> Result<TransitionMatrix> {
    check_finite("omega", omega)?;
    if t < 0.0 || t.is_nan() {
        return Err(Error::NegativeTime(t));
    }
    let alpha = mixing_angle(fb, params);
    let chi_plus = 0.5 * (alpha.cos() + 1.0);
    let chi_minus = 0.5 * (alpha.cos() - 1.0);
    let kappa = Complex64::from_polar(0.5 * alpha.sin(), fb.theta);
    let (lp, lm) = mode_eigenfrequencies(omega, params, fb);
    let ep = Complex64::from_polar(1.0, -lp * t);
    let em = Complex64::from_polar(1.0, -lm * t);
    Ok(TransitionMatrix([
        [chi_plus * ep - chi_minus * em, kappa.conj() * (ep - em)],
        [kappa * (ep - em), -chi_minus * ep + chi_plus * em],
    ]))
}

/// Wave-vector offset between junction-coupled source and drain modes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JunctionOffset {
    /// `l = m e (U_B − U_C) / (ħ² k₀)`.
    pub offset: f64,
    /// `(ħ² k₀² / 2m) / (e |U_C − U_B|)`; infinite for an unbiased junction.
    pub kinetic_to_bias: f64,
}

impl JunctionOffset {
    /// Ratio above which the constant-offset approximation is trusted.
    pub const VALIDITY_RATIO: f64 = 10.0;

    pub fn is_valid(&self) -> bool {
        self.kinetic_to_bias >= Self::VALIDITY_RATIO
    }
}

/// Offset between coupled source and drain wave vectors, from energy
/// conservation across a weakly biased junction. Units are the caller's; pass
/// `hbar = 1.0` for natural units.
pub fn junction_offset(
    mass: f64,
    charge: f64,
    k0: f64,
    u_b: f64,
    u_c: f64,
    hbar: f64,
) -> Result<JunctionOffset> {
    for (field, v) in [
        ("mass", mass),
        ("charge", charge),
        ("k0", k0),
        ("u_b", u_b),
        ("u_c", u_c),
        ("hbar", hbar),
    ] {
        check_finite(field, v)?;
    }
    if k0 <= 0.0 {
        return Err(Error::invalid("k0", "central wave vector must be > 0"));
    }
    if mass <= 0.0 || hbar <= 0.0 {
        return Err(Error::invalid("mass", "mass and hbar must be > 0"));
    }
    let bias = charge * (u_b - u_c);
    let kinetic = hbar * hbar * k0 * k0 / (2.0 * mass);
    let kinetic_to_bias = if bias == 0.0 {
        f64::INFINITY
    } else {
        kinetic / bias.abs()
    };
    Ok(JunctionOffset {
        offset: mass * bias / (hbar * hbar * k0),
        kinetic_to_bias,
    })
}
