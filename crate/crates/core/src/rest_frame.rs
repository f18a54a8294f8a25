//! Comoving-frame response of a single-resonance Lorentz medium.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{c, sqrt_upper, ONE};

/// Lorentz-oscillator constants of the slab material.
///
/// Frequencies are expressed in units of the resonance frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LorentzParams {
    pub eps_inf: f64,
    pub mu_inf: f64,
    pub omega_pe: f64,
    pub omega_pm: f64,
    pub gamma_e: f64,
    pub gamma_m: f64,
}

impl LorentzParams {
    /// Reference dispersive material used by the figure presets.
    pub const REFERENCE: Self = Self {
        eps_inf: 2.0,
        mu_inf: 1.0,
        omega_pe: 0.1,
        omega_pm: 0.05,
        gamma_e: 0.1,
        gamma_m: 0.2,
    };

    /// Free space.
    pub const VACUUM: Self = Self {
        eps_inf: 1.0,
        mu_inf: 1.0,
        omega_pe: 0.0,
        omega_pm: 0.0,
        gamma_e: 0.0,
        gamma_m: 0.0,
    };

    /// Same oscillator strengths with all damping removed.
    #[must_use]
    pub fn lossless(self) -> Self {
        Self {
            gamma_e: 0.0,
            gamma_m: 0.0,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("eps_inf", self.eps_inf),
            ("mu_inf", self.mu_inf),
            ("omega_pe", self.omega_pe),
            ("omega_pm", self.omega_pm),
            ("gamma_e", self.gamma_e),
            ("gamma_m", self.gamma_m),
        ];
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be finite")));
            }
        }
        if self.eps_inf <= 0.0 || self.mu_inf <= 0.0 {
            return Err(Error::InvalidParameter(
                "eps_inf and mu_inf must be positive".into(),
            ));
        }
        if self.gamma_e < 0.0 || self.gamma_m < 0.0 {
            return Err(Error::InvalidParameter(
                "damping rates must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

impl Default for LorentzParams {
    fn default() -> Self {
        Self::REFERENCE
    }
}

/// `high * (1 + plasma^2 / (1 - w^2 - i damping w))`.
///
/// Valid for any real `w`, including negative frequencies. Returns a pole
/// error only if the denominator vanishes exactly with a non-zero oscillator
/// strength.
pub fn lorentz_response(w: f64, high: f64, plasma: f64, damping: f64) -> Result<Complex64> {
    let denominator = c(1.0 - w * w, -damping * w);
    if plasma == 0.0 {
        return Ok(c(high, 0.0));
    }
    if denominator.re == 0.0 && denominator.im == 0.0 {
        return Err(Error::LorentzPole { w });
    }
    Ok(high * (ONE + plasma * plasma / denominator))
}

pub fn lorentz_eps(w: f64, p: &LorentzParams) -> Result<Complex64> {
    lorentz_response(w, p.eps_inf, p.omega_pe, p.gamma_e)
}

pub fn lorentz_mu(w: f64, p: &LorentzParams) -> Result<Complex64> {
    lorentz_response(w, p.mu_inf, p.omega_pm, p.gamma_m)
}

/// `sqrt(eps mu)` on the branch with non-negative imaginary part.
pub fn refractive_index(eps: Complex64, mu: Complex64) -> Complex64 {
    sqrt_upper(eps * mu)
}

/// Permittivity, permeability and refractive index at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RestFrameResponse {
    pub eps: Complex64,
    pub mu: Complex64,
    pub n: Complex64,
}

impl RestFrameResponse {
    pub fn evaluate(w: f64, p: &LorentzParams) -> Result<Self> {
        if !w.is_finite() || w <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "frequency must be positive and finite, got {w}"
            )));
        }
        let eps = lorentz_eps(w, p)?;
        let mu = lorentz_mu(w, p)?;
        Ok(Self::from_constants(eps, mu))
    }

    pub fn from_constants(eps: Complex64, mu: Complex64) -> Self {
        Self {
            eps,
            mu,
            n: refractive_index(eps, mu),
        }
    }
}
