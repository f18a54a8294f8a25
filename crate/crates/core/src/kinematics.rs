//! Relativistic parameters of a medium moving along `z`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::{real, sqrt_upper, ONE};

/// Below this gap `|1 - n^2 beta^2|` the medium is treated as singular.
pub const CHERENKOV_TOLERANCE: f64 = 1e-12;

/// Lorentz factor `(1 - beta^2)^(-1/2)`.
pub fn lorentz_factor(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok(1.0 / (1.0 - beta * beta).sqrt())
}

fn check_beta(beta: f64) -> Result<()> {
    if !beta.is_finite() || beta.abs() >= 1.0 {
        return Err(Error::Superluminal { beta });
    }
    Ok(())
}

/// Kinematic state of a slab with comoving index `n` moving at speed `beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics {
    pub beta: f64,
    pub gamma: f64,
    pub n: Complex64,
    /// `(1 - beta^2) / (1 - n^2 beta^2)`
    pub alpha: Complex64,
    /// `beta (n^2 - 1) / (1 - n^2 beta^2)`
    pub m: Complex64,
    /// Laboratory-frame index for propagation normal to the velocity.
    pub n_eff: Complex64,
}

impl Kinematics {
    pub fn new(n: Complex64, beta: f64) -> Result<Self> {
        let gamma = lorentz_factor(beta)?;
        let n2 = n * n;
        let b2 = beta * beta;
        let gap = ONE - n2 * b2;
        if gap.norm() < CHERENKOV_TOLERANCE {
            return Err(Error::CherenkovSingularity { gap: gap.norm() });
        }
        let alpha = real(1.0 - b2) / gap;
        let m = beta * (n2 - 1.0) / gap;
        let n_eff = gamma * sqrt_upper(n2 - b2);
        Ok(Self {
            beta,
            gamma,
            n,
            alpha,
            m,
            n_eff,
        })
    }

    /// Real part of the effective index.
    pub fn eta(&self) -> f64 {
        self.n_eff.re
    }

    /// Imaginary part of the effective index; never negative.
    pub fn kappa(&self) -> f64 {
        self.n_eff.im
    }

    /// `(alpha^2 n^2 - m^2) / alpha`, an independent route to `n_eff^2`.
    pub fn n_eff_squared_from_alpha_m(&self) -> Complex64 {
        (self.alpha * self.alpha * self.n * self.n - self.m * self.m) / self.alpha
    }
}

/// Laboratory-frame effective index `gamma sqrt(n^2 - beta^2)`.
pub fn effective_index(n: Complex64, beta: f64) -> Result<Complex64> {
    Ok(Kinematics::new(n, beta)?.n_eff)
}
