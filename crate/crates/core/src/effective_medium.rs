//! Laboratory-frame constitutive tensors of the moving medium and the
//! quantities derived from them: absorptive parts, their square roots, the
//! noise coupling constants and the Green tensors.
//!
//! Axis order is `(x, y, z)`. The slab faces are normal to `z` and the slab
//! moves along `y`, so the only off-diagonal constitutive entry is `zy`.

use nalgebra::Matrix3;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kinematics::Kinematics;
use crate::numeric::{c, real, sqrt_upper, I, ONE, ZERO};
use crate::rest_frame::RestFrameResponse;
use crate::scattering::Polarization;

pub type CMatrix3 = Matrix3<Complex64>;

/// Below this magnitude the `zy` coupling is treated as absent.
pub const DEGENERATE_COUPLING: f64 = 1e-14;
/// Below this attenuation the slab counts as lossless.
pub const LOSSLESS_KAPPA: f64 = 1e-14;
/// Relative size of the Green tensor denominator treated as a pole.
pub const GREEN_POLE_TOLERANCE: f64 = 1e-12;

/// Dimensionless shape shared by the effective permittivity and permeability.
///
/// `diag(a, 1, a)` with `a = (alpha^2 n^2 - m^2) / (alpha n^2)` and a single
/// `zy` entry `k_z m / (w alpha n^2)`. Since `(alpha^2 n^2 - m^2) / alpha`
/// equals `n_eff^2`, `a` is evaluated as `n_eff^2 / n^2`, which avoids the
/// cancellation between two large terms close to the Cherenkov condition.
pub fn tensor_shape(kin: &Kinematics, k_z: Complex64, w: f64) -> Result<CMatrix3> {
    if !w.is_finite() || w <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "frequency must be positive and finite, got {w}"
        )));
    }
    let n2 = kin.n * kin.n;
    let an2 = kin.alpha * n2;
    if an2.norm() == 0.0 {
        return Err(Error::SingularMatrix {
            context: "effective tensor shape",
        });
    }
    let a = kin.n_eff * kin.n_eff / n2;
    let d = k_z * kin.m / (w * an2);
    let mut t = CMatrix3::from_diagonal(&nalgebra::Vector3::new(a, ONE, a));
    t[(2, 1)] = d;
    Ok(t)
}

/// Effective permittivity and permeability tensors at longitudinal wavenumber `k_z`.
pub fn effective_tensors(
    eps: Complex64,
    mu: Complex64,
    kin: &Kinematics,
    k_z: Complex64,
    w: f64,
) -> Result<(CMatrix3, CMatrix3)> {
    let shape = tensor_shape(kin, k_z, w)?;
    Ok((shape * eps, shape * mu))
}

/// Which constitutive tensor an absorptive part is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LossKind {
    /// The permittivity itself.
    Electric,
    /// The inverse permeability.
    InverseMagnetic,
}

/// Hermitian absorptive part of a constitutive tensor, conjugated elementwise.
///
/// The sign is chosen so that both kinds are positive on the diagonal for a
/// passive medium: `Im eps` for [`LossKind::Electric`] and `-Im(1/mu)` for
/// [`LossKind::InverseMagnetic`].
pub fn loss_matrix(tensor: &CMatrix3, kind: LossKind) -> CMatrix3 {
    let half_i_anti = (tensor - tensor.adjoint()) * c(0.0, 0.5);
    let x = match kind {
        LossKind::Electric => -half_i_anti,
        LossKind::InverseMagnetic => half_i_anti,
    };
    x.map(|z| z.conj())
}

/// Smallest eigenvalue of the Hermitian `yz` block of a loss matrix.
pub fn loss_block_min_eigenvalue(x: &CMatrix3) -> f64 {
    let p = x[(1, 1)].re;
    let s = x[(2, 2)].re;
    let half = 0.5 * (p - s);
    0.5 * (p + s) - (half * half + x[(2, 1)].norm_sqr()).sqrt()
}

/// Closed-form square root of a loss matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct LossRoot {
    pub matrix: CMatrix3,
    /// The `zy` coupling vanished and the diagonal fallback was used.
    pub degenerate: bool,
}

impl LossRoot {
    /// `max |(S S^dagger - X)_ij|`.
    pub fn product_residual(&self, x: &CMatrix3) -> f64 {
        max_abs(&(self.matrix * self.matrix.adjoint() - x))
    }

    /// `max |(S S - X)_ij|`.
    pub fn square_residual(&self, x: &CMatrix3) -> f64 {
        max_abs(&(self.matrix * self.matrix - x))
    }
}

pub fn max_abs(m: &CMatrix3) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Square root of a loss matrix whose only off-diagonal entries sit in the
/// `yz` block.
///
/// The `yz` block `B` is treated with the principal root
/// `(B + M N) / (M + N)`, where `M^2` and `N^2` are its eigenvalues and the
/// roots take the branch with non-negative imaginary part. For a positive
/// semidefinite block this is the Hermitian root and `S S^dagger = X`. For an
/// indefinite block `S^2 = X` still holds but no root can reproduce `X` as
/// `S S^dagger`.
pub fn sqrt_loss_matrix(x: &CMatrix3) -> Result<LossRoot> {
    let tol = 1e-12 * max_abs(x).max(1.0);
    let mut diag = [0.0; 3];
    for (i, d) in diag.iter_mut().enumerate() {
        let v = x[(i, i)].re;
        if v < -tol {
            return Err(Error::NonPassive { value: v });
        }
        *d = v.max(0.0);
    }
    let [xx, p, s] = diag;
    let mut root = CMatrix3::zeros();
    root[(0, 0)] = real(xx.sqrt());

    let coupling = x[(2, 1)];
    if coupling.norm() < DEGENERATE_COUPLING {
        root[(1, 1)] = real(p.sqrt());
        root[(2, 2)] = real(s.sqrt());
        return Ok(LossRoot {
            matrix: root,
            degenerate: true,
        });
    }

    let spread = ((p - s) * (p - s) + 4.0 * coupling.norm_sqr()).sqrt();
    let small = sqrt_upper(real(0.5 * (p + s - spread)));
    let large = sqrt_upper(real(0.5 * (p + s + spread)));
    let trace = small + large;
    let det = small * large;
    root[(1, 1)] = (real(p) + det) / trace;
    root[(2, 2)] = (real(s) + det) / trace;
    root[(2, 1)] = coupling / trace;
    root[(1, 2)] = x[(1, 2)] / trace;
    Ok(LossRoot {
        matrix: root,
        degenerate: false,
    })
}

/// Square root of the absorptive part of `tensor`.
pub fn sqrt_absorptive_part(tensor: &CMatrix3, kind: LossKind) -> Result<LossRoot> {
    sqrt_loss_matrix(&loss_matrix(tensor, kind))
}

/// `v X v^dagger` for `v = (0, 1, -k)`.
fn yz_quadratic_form(x: &CMatrix3, k: Complex64) -> f64 {
    let v = [ONE, -k];
    let mut acc = ZERO;
    for (a, va) in v.iter().enumerate() {
        for (b, vb) in v.iter().enumerate() {
            acc += va * x[(a + 1, b + 1)] * vb.conj();
        }
    }
    acc.re
}

/// Electric coupling computed from root entries,
/// `|S_yy - k S_zy|^2 + |S_yz - k S_zz|^2`.
pub fn electric_coupling_from_root(root: &CMatrix3, k: Complex64) -> f64 {
    (root[(1, 1)] - k * root[(2, 1)]).norm_sqr() + (root[(1, 2)] - k * root[(2, 2)]).norm_sqr()
}

/// Magnetic coupling computed from root entries, `|S_yy|^2 + |S_yz|^2`.
pub fn magnetic_coupling_from_root(root: &CMatrix3) -> f64 {
    root[(1, 1)].norm_sqr() + root[(1, 2)].norm_sqr()
}

/// Strengths with which the medium noise currents drive each polarization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingConstants {
    /// Electric noise strength for the `y` polarization.
    pub electric: f64,
    /// Magnetic noise strength for the `x` polarization.
    pub magnetic: f64,
    /// `xx` entry of the electric loss matrix.
    pub electric_xx: f64,
    /// `xx` entry of the inverse-magnetic loss matrix.
    pub magnetic_xx: f64,
    pub n_eff: Complex64,
}

impl CouplingConstants {
    /// Total noise weight, equal to `2 kappa xi` for the polarization.
    pub fn loss_weight(&self, pol: Polarization) -> f64 {
        let n2 = self.n_eff.norm_sqr();
        match pol {
            Polarization::X => self.electric_xx + n2 * self.magnetic,
            Polarization::Y => self.electric + n2 * self.magnetic_xx,
        }
    }

    /// Electric minus magnetic weight, relative to the total.
    pub fn contrast(&self, pol: Polarization) -> f64 {
        let n2 = self.n_eff.norm_sqr();
        let total = self.loss_weight(pol);
        if total == 0.0 {
            return 0.0;
        }
        let diff = match pol {
            Polarization::X => self.electric_xx - n2 * self.magnetic,
            Polarization::Y => self.electric - n2 * self.magnetic_xx,
        };
        diff / total
    }

    /// Mode normalization `loss_weight / (2 kappa)`.
    pub fn normalization(&self, pol: Polarization) -> Result<f64> {
        let kappa = self.n_eff.im;
        if kappa < LOSSLESS_KAPPA {
            return Err(Error::LosslessLimit { kappa });
        }
        Ok(self.loss_weight(pol) / (2.0 * kappa))
    }

    pub fn xi(&self) -> Result<f64> {
        self.normalization(Polarization::X)
    }

    pub fn xi_prime(&self) -> Result<f64> {
        self.normalization(Polarization::Y)
    }
}

/// Everything the slab solution needs from the moving medium at one
/// frequency, evaluated on shell (`k_z = n_eff w`).
#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveMedium {
    pub eps_eff: CMatrix3,
    pub mu_eff: CMatrix3,
    pub mu_eff_inv: CMatrix3,
    pub eps_loss: CMatrix3,
    pub mu_inv_loss: CMatrix3,
    pub eps_root: LossRoot,
    pub mu_inv_root: LossRoot,
    pub coupling: CouplingConstants,
}

impl EffectiveMedium {
    pub fn on_shell(rest: &RestFrameResponse, kin: &Kinematics, w: f64) -> Result<Self> {
        let k_z = kin.n_eff * w;
        let (eps_eff, mu_eff) = effective_tensors(rest.eps, rest.mu, kin, k_z, w)?;
        let mu_eff_inv = mu_eff.try_inverse().ok_or(Error::SingularMatrix {
            context: "effective permeability",
        })?;
        let eps_loss = loss_matrix(&eps_eff, LossKind::Electric);
        let mu_inv_loss = loss_matrix(&mu_eff_inv, LossKind::InverseMagnetic);
        let eps_root = sqrt_loss_matrix(&eps_loss)?;
        let mu_inv_root = sqrt_loss_matrix(&mu_inv_loss)?;

        let k = kin.m * kin.n_eff / (rest.eps * kin.alpha * mu_eff[(0, 0)]);
        let coupling = CouplingConstants {
            electric: yz_quadratic_form(&eps_loss, k),
            magnetic: mu_inv_loss[(1, 1)].re,
            electric_xx: eps_loss[(0, 0)].re,
            magnetic_xx: mu_inv_loss[(0, 0)].re,
            n_eff: kin.n_eff,
        };
        Ok(Self {
            eps_eff,
            mu_eff,
            mu_eff_inv,
            eps_loss,
            mu_inv_loss,
            eps_root,
            mu_inv_root,
            coupling,
        })
    }

    /// Ratio `k / (w mu_eff)` entering the interface conditions.
    pub fn impedance_ratio(&self, pol: Polarization) -> Complex64 {
        match pol {
            Polarization::X => self.mu_eff[(1, 1)],
            Polarization::Y => self.mu_eff[(0, 0)],
        }
    }

    /// Coupling ratio `m n_eff / (eps alpha mu_eff_xx)` used by the electric
    /// coupling constant.
    pub fn electric_mixing(&self, rest: &RestFrameResponse, kin: &Kinematics) -> Complex64 {
        kin.m * kin.n_eff / (rest.eps * kin.alpha * self.mu_eff[(0, 0)])
    }
}

fn cross_matrix(v: [Complex64; 3]) -> CMatrix3 {
    CMatrix3::new(
        ZERO, -v[2], v[1], //
        v[2], ZERO, -v[0], //
        -v[1], v[0], ZERO,
    )
}

/// Green tensor of the unbounded moving medium in `(k_z, w)` space.
pub fn green_tensor_reciprocal(
    k_z: Complex64,
    w: f64,
    eps: Complex64,
    kin: &Kinematics,
) -> Result<CMatrix3> {
    let (n2, alpha, m) = (kin.n * kin.n, kin.alpha, kin.m);
    let w2 = w * w;
    let dispersion = k_z * k_z * alpha + w2 * m * m - n2 * w2 * alpha * alpha;
    let scale = (k_z.norm_sqr() * alpha.norm())
        .max(w2 * (m.norm_sqr() + n2.norm() * alpha.norm_sqr()))
        .max(f64::MIN_POSITIVE);
    if dispersion.norm() < GREEN_POLE_TOLERANCE * scale {
        return Err(Error::GreenTensorPole {
            denominator: dispersion.norm(),
        });
    }
    let den = w2 * eps * dispersion;
    let mut g = CMatrix3::zeros();
    g[(0, 0)] = -n2 * w2 * alpha / den;
    g[(1, 1)] = (w2 * m * m - n2 * w2 * alpha * alpha) / den;
    g[(1, 2)] = w * m * k_z / den;
    g[(2, 1)] = g[(1, 2)];
    g[(2, 2)] = (k_z * k_z - n2 * w2 * alpha) / den;
    Ok(g)
}

/// Wave operator of the moving medium in `(k_z, w)` space.
///
/// Obtained from the Maxwell equations with the Minkowski constitutive
/// relations: `P (mu A)^-1 P + w^2 eps A` with `A = diag(alpha, 1, alpha)` and
/// `P` the cross-product matrix of `(0, w m, k_z)`. Its inverse is
/// [`green_tensor_reciprocal`].
pub fn wave_operator(
    k_z: Complex64,
    w: f64,
    eps: Complex64,
    mu: Complex64,
    kin: &Kinematics,
) -> CMatrix3 {
    let a_inv = CMatrix3::from_diagonal(&nalgebra::Vector3::new(
        ONE / kin.alpha,
        ONE,
        ONE / kin.alpha,
    ));
    let a = CMatrix3::from_diagonal(&nalgebra::Vector3::new(kin.alpha, ONE, kin.alpha));
    let p = cross_matrix([ZERO, w * kin.m, k_z]);
    p * a_inv * p / mu + a * (eps * (w * w))
}

/// `K mu_eff^-1 K + w^2 eps_eff` with `K` the cross-product matrix of `(0, 0, k_z)`.
pub fn effective_wave_operator(
    k_z: Complex64,
    w: f64,
    eps_eff: &CMatrix3,
    mu_eff_inv: &CMatrix3,
) -> CMatrix3 {
    let k = cross_matrix([ZERO, ZERO, k_z]);
    k * mu_eff_inv * k + eps_eff * real(w * w)
}

/// Green tensor of the unbounded moving medium in `(z, w)` space, the
/// outgoing-wave residue of [`green_tensor_reciprocal`].
pub fn green_tensor_coordinate(
    z: f64,
    z_source: f64,
    w: f64,
    eps: Complex64,
    mu: Complex64,
    kin: &Kinematics,
) -> CMatrix3 {
    let dz = z - z_source;
    let k = kin.n_eff * w;
    let phase = (I * k * dz.abs()).exp();
    let n2 = kin.n * kin.n;
    let mu_xx = mu * kin.n_eff * kin.n_eff / n2;
    let parity = if dz > 0.0 {
        1.0
    } else if dz < 0.0 {
        -1.0
    } else {
        0.0
    };
    let mut g = CMatrix3::zeros();
    g[(0, 0)] = -I * mu / (2.0 * k);
    g[(1, 1)] = -I * mu_xx / (2.0 * k);
    g[(1, 2)] = parity * I * kin.m / (2.0 * kin.alpha * eps * w);
    g[(2, 1)] = g[(1, 2)];
    g[(2, 2)] = I * (k * k / (w * w) - n2 * kin.alpha) / (2.0 * kin.alpha * eps * k);
    g * phase
}
