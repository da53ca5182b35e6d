//! Physical and feedback configuration of the dot-plus-leads system.
//!
//! Units follow the ħ = 1 convention: frequencies and energies in μeV,
//! time in ħ/μeV (about 0.658 ps per unit).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dot frequency, lead detuning and Lorentzian noise shape.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// Dot working frequency ω_S.
    pub omega_s: f64,
    /// Half the source-drain central frequency difference.
    pub delta: f64,
    /// Width of the Lorentzian noise spectrum.
    pub h: f64,
    /// Strength of the Lorentzian noise spectrum.
    pub eta: f64,
}

impl Default for PhysicalParams {
    /// The quantum-dot device used throughout the examples:
    /// ω_S = 10, δ = 0.05, h = 0.3, η = 0.4 (μeV).
    fn default() -> Self {
        Self {
            omega_s: 10.0,
            delta: 0.05,
            h: 0.3,
            eta: 0.4,
        }
    }
}

impl PhysicalParams {
    pub fn new(omega_s: f64, delta: f64, h: f64, eta: f64) -> Result<Self> {
        let p = Self {
            omega_s,
            delta,
            h,
            eta,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_finite("omega_s", self.omega_s)?;
        check_finite("delta", self.delta)?;
        check_finite("h", self.h)?;
        check_finite("eta", self.eta)?;
        if self.omega_s <= 0.0 {
            return Err(Error::invalid("omega_s", "must be > 0"));
        }
        if self.delta < 0.0 {
            return Err(Error::invalid("delta", "must be >= 0"));
        }
        if self.h <= 0.0 {
            return Err(Error::invalid("h", "must be > 0"));
        }
        if self.eta < 0.0 {
            return Err(Error::invalid("eta", "must be >= 0"));
        }
        Ok(())
    }

    pub fn with_eta(self, eta: f64) -> Self {
        Self { eta, ..self }
    }

    /// Total kernel weight ηh, equal to M(t = 0).
    pub fn coupling(&self) -> f64 {
        self.eta * self.h
    }
}

/// Junction tunnelling coupling f = r·e^{iθ}, taken frequency independent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeedbackParams {
    pub r: f64,
    /// Phase in radians, normalised to [−π, π).
    pub theta: f64,
}

impl Default for FeedbackParams {
    fn default() -> Self {
        Self::open_loop()
    }
}

impl FeedbackParams {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        check_finite("r", r)?;
        check_finite("theta", theta)?;
        if r < 0.0 {
            return Err(Error::invalid("r", "must be >= 0"));
        }
        Ok(Self {
            r,
            theta: normalize_angle(theta),
        })
    }

    /// No junction: r = 0, θ = 0.
    pub fn open_loop() -> Self {
        Self { r: 0.0, theta: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        check_finite("r", self.r)?;
        check_finite("theta", self.theta)?;
        if self.r < 0.0 {
            return Err(Error::invalid("r", "must be >= 0"));
        }
        if !(-PI..PI).contains(&self.theta) {
            return Err(Error::invalid("theta", "must lie in [-pi, pi)"));
        }
        Ok(())
    }
}

/// Maps an angle onto [−π, π).
pub fn normalize_angle(theta: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let wrapped = (theta + PI).rem_euclid(two_pi) - PI;
    // rem_euclid can round up to exactly 2π for inputs just below a multiple of it
    if wrapped >= PI {
        wrapped - two_pi
    } else {
        wrapped
    }
}

pub(crate) fn check_finite(field: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(field, format!("must be finite, got {value}")))
    }
}
