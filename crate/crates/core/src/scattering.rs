//! Reflection, transmission and absorption of the moving slab.
//!
//! The slab occupies `-L/2 <= z <= L/2` and is surrounded by vacuum. All
//! amplitudes are referred to the slab faces, which adds the common phase
//! `exp(-i w L)` to the bare Fabry-Perot amplitudes.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::effective_medium::{CouplingConstants, EffectiveMedium, LOSSLESS_KAPPA};
use crate::error::{Error, Result};
use crate::kinematics::Kinematics;
use crate::numeric::{real, sin_over, sinh_over, I, ONE, ZERO};
use crate::rest_frame::{LorentzParams, RestFrameResponse};

/// Largest tolerated gap between an absorption-matrix row norm and the absorptance.
pub const ROW_NORM_TOLERANCE: f64 = 1e-6;

/// Direction of the electric field of the incident plane wave.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarization {
    /// Field along the faces, perpendicular to the velocity.
    X,
    /// Field along the velocity.
    Y,
}

impl Polarization {
    pub const BOTH: [Self; 2] = [Self::X, Self::Y];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::X => "x",
            Self::Y => "y",
        }
    }
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Polarization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "x" => Ok(Self::X),
            "y" => Ok(Self::Y),
            other => Err(Error::InvalidParameter(format!(
                "unknown polarization '{other}', expected x or y"
            ))),
        }
    }
}

/// Slab thickness in units of `c / w0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlabGeometry {
    pub thickness: f64,
}

impl SlabGeometry {
    pub const UNIT: Self = Self { thickness: 1.0 };

    pub fn new(thickness: f64) -> Result<Self> {
        let g = Self { thickness };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.thickness.is_finite() || self.thickness <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "slab thickness must be positive and finite, got {}",
                self.thickness
            )));
        }
        Ok(())
    }
}

impl Default for SlabGeometry {
    fn default() -> Self {
        Self::UNIT
    }
}

/// Complex amplitude reflection and transmission coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlabCoefficients {
    pub reflection: Complex64,
    pub transmission: Complex64,
}

/// Slab amplitudes for effective index `n_eff` and impedance ratio `zeta`.
pub fn fresnel_slab(
    n_eff: Complex64,
    zeta: Complex64,
    w: f64,
    thickness: f64,
) -> Result<SlabCoefficients> {
    let x = w * thickness;
    let round_trip = (2.0 * I * n_eff * x).exp();
    let sum = zeta + n_eff;
    let diff = zeta - n_eff;
    let den = sum * sum - diff * diff * round_trip;
    if den.norm() < 1e-14 * sum.norm_sqr().max(f64::MIN_POSITIVE) {
        return Err(Error::SlabDegeneracy {
            denominator: den.norm(),
        });
    }
    let outside = (-I * x).exp();
    let reflection = (round_trip - ONE) * (n_eff * n_eff - zeta * zeta) * outside / den;
    let transmission = 4.0 * n_eff * zeta * outside * (I * n_eff * x).exp() / den;
    Ok(SlabCoefficients {
        reflection,
        transmission,
    })
}

/// Single-interface Fresnel coefficients. Media are labelled 1 (left
/// vacuum), 2 (slab) and 3 (right vacuum).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceCoefficients {
    pub r12: Complex64,
    pub r21: Complex64,
    pub r23: Complex64,
    pub r32: Complex64,
    pub t12: Complex64,
    pub t21: Complex64,
    pub t23: Complex64,
    pub t32: Complex64,
}

impl InterfaceCoefficients {
    pub fn new(n_eff: Complex64, zeta: Complex64) -> Self {
        let sum = zeta + n_eff;
        let r = (zeta - n_eff) / sum;
        let t_in = 2.0 * zeta / sum;
        let t_out = 2.0 * n_eff / sum;
        Self {
            r12: r,
            r32: r,
            r21: -r,
            r23: -r,
            t12: t_in,
            t32: t_in,
            t21: t_out,
            t23: t_out,
        }
    }
}

/// 2x2 transfer matrix acting on (forward, backward) mode amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transfer2(pub [[Complex64; 2]; 2]);

impl Transfer2 {
    pub fn det(&self) -> Complex64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }
}

impl Mul for Transfer2 {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self(out)
    }
}

/// One homogeneous region of the transfer-matrix stack.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layer {
    pub index: Complex64,
    pub impedance_ratio: Complex64,
    /// Mode normalization of the region.
    pub normalization: f64,
}

impl Layer {
    pub const VACUUM: Self = Self {
        index: ONE,
        impedance_ratio: ONE,
        normalization: 1.0,
    };
}

/// Interface matrix connecting normalized modes of `left` to those of `right` at `z`.
pub fn interface_matrix(left: &Layer, right: &Layer, z: f64, w: f64) -> Transfer2 {
    let s = (left.normalization / right.normalization).sqrt();
    let k = left.impedance_ratio * right.index / (left.index * right.impedance_ratio);
    let plus = 0.5 * s * (k + ONE);
    let minus = 0.5 * s * (k - ONE);
    let (eta_l, eta_r) = (left.index.re, right.index.re);
    let phase_diff = real((eta_r - eta_l) * z * w);
    let phase_sum = real((eta_r + eta_l) * z * w);
    Transfer2([
        [
            plus * (-I * phase_diff).exp(),
            minus * (-I * phase_sum).exp(),
        ],
        [minus * (I * phase_sum).exp(), plus * (I * phase_diff).exp()],
    ])
}

/// Attenuation across a layer of thickness `l` with extinction `kappa`.
pub fn propagation_matrix(kappa: f64, w: f64, l: f64) -> Transfer2 {
    let x = kappa * w * l;
    Transfer2([[real((-x).exp()), ZERO], [ZERO, real(x.exp())]])
}

/// Amplitudes read off a total transfer matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferOutcome {
    pub matrix: Transfer2,
    /// Incidence from the left.
    pub reflection: Complex64,
    pub transmission: Complex64,
    /// Incidence from the right.
    pub reflection_right: Complex64,
    pub transmission_right: Complex64,
}

/// Independent slab solution by cascading interface and propagation matrices.
pub fn transfer_matrix_oracle(slab: &Layer, w: f64, thickness: f64) -> Result<TransferOutcome> {
    let half = 0.5 * thickness;
    let entry = interface_matrix(&Layer::VACUUM, slab, -half, w);
    let exit = interface_matrix(slab, &Layer::VACUUM, half, w);
    let m = exit * propagation_matrix(slab.index.im, w, thickness) * entry;
    let m22 = m.0[1][1];
    if m22.norm() == 0.0 || !m22.is_finite() {
        return Err(Error::SlabDegeneracy {
            denominator: m22.norm(),
        });
    }
    Ok(TransferOutcome {
        matrix: m,
        reflection: -m.0[1][0] / m22,
        transmission: m.det() / m22,
        reflection_right: m.0[0][1] / m22,
        transmission_right: ONE / m22,
    })
}

/// Coupling of the two medium noise modes to the two outgoing ports.
///
/// Row 0 feeds the reflection side, row 1 the transmission side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsorptionMatrix(pub [[Complex64; 2]; 2]);

impl AbsorptionMatrix {
    pub const ZERO: Self = Self([[ZERO; 2]; 2]);

    pub fn row_norms(&self) -> [f64; 2] {
        let m = &self.0;
        [
            m[0][0].norm_sqr() + m[0][1].norm_sqr(),
            m[1][0].norm_sqr() + m[1][1].norm_sqr(),
        ]
    }

    /// Largest gap between a squared row norm and `absorptance`.
    pub fn row_norm_deviation(&self, absorptance: f64) -> f64 {
        self.row_norms()
            .iter()
            .fold(0.0, |acc, r| acc.max((r - absorptance).abs()))
    }
}

/// Absorption matrix of a slab, built from the noise coupling constants.
///
/// A lossless slab gives the zero matrix. A row norm that misses the
/// absorptance by more than [`ROW_NORM_TOLERANCE`] is reported as an error.
pub fn absorption_matrix(
    n_eff: Complex64,
    zeta: Complex64,
    coupling: &CouplingConstants,
    pol: Polarization,
    w: f64,
    thickness: f64,
) -> Result<AbsorptionMatrix> {
    let slab = fresnel_slab(n_eff, zeta, w, thickness)?;
    let absorptance = 1.0 - slab.reflection.norm_sqr() - slab.transmission.norm_sqr();
    let kappa = n_eff.im;
    let weight = coupling.loss_weight(pol);
    if kappa < LOSSLESS_KAPPA || weight <= 0.0 {
        return Ok(AbsorptionMatrix::ZERO);
    }
    let half_weight = 0.5 * weight;
    let contrast = coupling.contrast(pol);

    let x = w * thickness;
    let damping = (-kappa * x).exp();
    let growth = sinh_over(kappa, x);
    let beat = sin_over(n_eff.re, x);
    let c_plus = (damping * (growth + contrast * beat)).max(0.0);
    let c_minus = (damping * (growth - contrast * beat)).max(0.0);
    let amp_plus = (half_weight * c_plus).sqrt();
    let amp_minus = (half_weight * c_minus).sqrt();

    let ic = InterfaceCoefficients::new(n_eff, zeta);
    let inside = (I * n_eff * x).exp();
    let multiple = ONE / (ONE - ic.r21 * ic.r21 * inside * inside);
    let outside = (-0.5 * I * x).exp();
    let left = ic.t12 * multiple * outside;
    let right = ic.t32 * multiple * outside;

    let m = AbsorptionMatrix([
        [
            amp_plus * left * (ONE + inside * ic.r23),
            amp_minus * left * (ONE - inside * ic.r23),
        ],
        [
            amp_plus * right * (ONE + inside * ic.r21),
            amp_minus * right * (inside * ic.r21 - ONE),
        ],
    ]);
    for row_norm in m.row_norms() {
        if (row_norm - absorptance).abs() > ROW_NORM_TOLERANCE {
            return Err(Error::RowNormMismatch {
                row_norm,
                absorptance,
            });
        }
    }
    Ok(m)
}

/// Scattering outcome for one frequency, speed and polarization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringResult {
    pub w: f64,
    pub beta: f64,
    pub pol: Polarization,
    pub n_eff: Complex64,
    pub reflection: Complex64,
    pub transmission: Complex64,
    pub reflectance: f64,
    pub transmittance: f64,
    pub absorptance: f64,
}

/// Slab material evaluated at one frequency and speed.
#[derive(Debug, Clone, PartialEq)]
pub struct SlabModel {
    pub w: f64,
    pub rest: RestFrameResponse,
    pub kinematics: Kinematics,
    pub medium: EffectiveMedium,
}

impl SlabModel {
    pub fn new(material: &LorentzParams, w: f64, beta: f64) -> Result<Self> {
        material.validate()?;
        let rest = RestFrameResponse::evaluate(w, material)?;
        Self::from_response(rest, w, beta)
    }

    /// Model for frequency-independent constants `eps` and `mu`.
    pub fn from_constants(eps: Complex64, mu: Complex64, w: f64, beta: f64) -> Result<Self> {
        if !w.is_finite() || w <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "frequency must be positive and finite, got {w}"
            )));
        }
        Self::from_response(RestFrameResponse::from_constants(eps, mu), w, beta)
    }

    fn from_response(rest: RestFrameResponse, w: f64, beta: f64) -> Result<Self> {
        let kinematics = Kinematics::new(rest.n, beta)?;
        let medium = EffectiveMedium::on_shell(&rest, &kinematics, w)?;
        Ok(Self {
            w,
            rest,
            kinematics,
            medium,
        })
    }

    pub fn impedance_ratio(&self, pol: Polarization) -> Complex64 {
        self.medium.impedance_ratio(pol)
    }

    pub fn scatter(&self, geometry: &SlabGeometry, pol: Polarization) -> Result<ScatteringResult> {
        geometry.validate()?;
        let n_eff = self.kinematics.n_eff;
        let slab = fresnel_slab(n_eff, self.impedance_ratio(pol), self.w, geometry.thickness)?;
        let reflectance = slab.reflection.norm_sqr();
        let transmittance = slab.transmission.norm_sqr();
        Ok(ScatteringResult {
            w: self.w,
            beta: self.kinematics.beta,
            pol,
            n_eff,
            reflection: slab.reflection,
            transmission: slab.transmission,
            reflectance,
            transmittance,
            absorptance: 1.0 - reflectance - transmittance,
        })
    }

    pub fn absorption_matrix(
        &self,
        geometry: &SlabGeometry,
        pol: Polarization,
    ) -> Result<AbsorptionMatrix> {
        geometry.validate()?;
        absorption_matrix(
            self.kinematics.n_eff,
            self.impedance_ratio(pol),
            &self.medium.coupling,
            pol,
            self.w,
            geometry.thickness,
        )
    }

    /// Transfer-matrix solution of the same slab.
    pub fn transfer_matrix(
        &self,
        geometry: &SlabGeometry,
        pol: Polarization,
    ) -> Result<TransferOutcome> {
        geometry.validate()?;
        let slab = Layer {
            index: self.kinematics.n_eff,
            impedance_ratio: self.impedance_ratio(pol),
            normalization: self.medium.coupling.normalization(pol).unwrap_or(1.0),
        };
        transfer_matrix_oracle(&slab, self.w, geometry.thickness)
    }
}

/// Convenience wrapper evaluating one `(w, beta, pol)` point.
pub fn sweep_point(
    material: &LorentzParams,
    geometry: &SlabGeometry,
    w: f64,
    beta: f64,
    pol: Polarization,
) -> Result<ScatteringResult> {
    SlabModel::new(material, w, beta)?.scatter(geometry, pol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::c;
    use proptest::prelude::*;

    const L: SlabGeometry = SlabGeometry::UNIT;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn model(w: f64, beta: f64) -> SlabModel {
        SlabModel::new(&LorentzParams::REFERENCE, w, beta).unwrap()
    }

    #[test]
    fn x_polarization_at_half_light_speed() {
        let m = model(1.0, 0.5);
        let s = m.scatter(&L, Polarization::X).unwrap();
        assert!(close(
            s.reflection,
            c(-0.22364037710585417187, 0.2973943234433015564),
            1e-13
        ));
        assert!(close(
            s.transmission,
            c(0.72867388870087750972, 0.41085158901293866794),
            1e-13
        ));
        assert!((s.absorptance - 0.1617769338427367854).abs() < 1e-13);

        let ic = InterfaceCoefficients::new(m.kinematics.n_eff, m.impedance_ratio(Polarization::X));
        assert!(close(
            ic.r12,
            c(-0.21043160379917847973, -0.0246283880148668982),
            1e-14
        ));
        assert!(close(
            ic.t12,
            c(0.78956839620082152027, -0.0246283880148668982),
            1e-14
        ));
        assert!(close(
            ic.t21,
            c(1.2104316037991784797, 0.0246283880148668982),
            1e-14
        ));

        let a = m.absorption_matrix(&L, Polarization::X).unwrap().0;
        assert!(close(
            a[0][0],
            c(0.32830142184272799605, -0.11782451461201412076),
            1e-13
        ));
        assert!(close(a[1][0], a[0][0], 1e-14));
        assert!(close(
            a[0][1],
            c(0.15015830328793222322, -0.13253293163931966792),
            1e-13
        ));
        assert!(close(a[1][1], -a[0][1], 1e-14));
    }

    #[test]
    fn y_polarization_at_half_light_speed() {
        let m = model(1.0, 0.5);
        let s = m.scatter(&L, Polarization::Y).unwrap();
        assert!(close(
            s.reflection,
            c(-0.14945789558922028629, 0.19252025698012921315),
            1e-13
        ));
        assert!(close(
            s.transmission,
            c(0.76039441485394798339, 0.43755888584662446682),
            1e-13
        ));
        assert!((s.absorptance - 0.17094084337392944556).abs() < 1e-13);
        let a = m.absorption_matrix(&L, Polarization::Y).unwrap().0;
        assert!(close(
            a[0][0],
            c(0.31225988522012883275, -0.13180358752330354155),
            1e-13
        ));
        assert!(close(
            a[0][1],
            c(0.18939842241177513482, -0.14209383997963834966),
            1e-13
        ));
    }

    #[test]
    fn slab_at_rest() {
        let s = model(1.0, 0.0).scatter(&L, Polarization::X).unwrap();
        assert!((s.reflectance - 0.096591592202839674457).abs() < 1e-13);
        assert!((s.transmittance - 0.76369291210140377728).abs() < 1e-13);
        assert!((s.absorptance - 0.13971549569575654827).abs() < 1e-13);
        let y = model(1.0, 0.0).scatter(&L, Polarization::Y).unwrap();
        assert!(close(s.reflection, y.reflection, 1e-15));
    }

    #[test]
    fn fast_slab_regression() {
        let s = model(1.0, 0.999).scatter(&L, Polarization::X).unwrap();
        assert!((s.reflectance - 0.83756026819363053489).abs() < 1e-10);
        assert!((s.transmittance - 0.00017769457383456927986).abs() < 1e-12);
    }

    #[test]
    fn transfer_matrix_reproduces_slab() {
        let m = model(1.3, 0.7);
        for pol in Polarization::BOTH {
            let s = m.scatter(&L, pol).unwrap();
            let t = m.transfer_matrix(&L, pol).unwrap();
            assert!(close(s.reflection, t.reflection, 1e-12));
            assert!(close(s.transmission, t.transmission, 1e-12));
            assert!(close(t.reflection, t.reflection_right, 1e-12));
            assert!(close(t.transmission, t.transmission_right, 1e-12));
        }
    }

    #[test]
    fn lossless_slab_has_no_absorption_matrix() {
        let m = SlabModel::new(&LorentzParams::REFERENCE.lossless(), 1.4, 0.3).unwrap();
        let a = m.absorption_matrix(&L, Polarization::X).unwrap();
        assert_eq!(a, AbsorptionMatrix::ZERO);
        let s = m.scatter(&L, Polarization::Y).unwrap();
        assert!(s.absorptance.abs() < 1e-14);
    }

    #[test]
    fn polarization_parsing() {
        assert_eq!("X".parse::<Polarization>().unwrap(), Polarization::X);
        assert_eq!("y".parse::<Polarization>().unwrap(), Polarization::Y);
        assert!("z".parse::<Polarization>().is_err());
        assert!(SlabGeometry::new(0.0).is_err());
    }

    proptest! {
        #[test]
        fn passive_and_symmetric(w in 0.3f64..3.0, beta in 0.0f64..0.98) {
            let plus = model(w, beta);
            let minus = model(w, -beta);
            for pol in Polarization::BOTH {
                let a = plus.scatter(&L, pol).unwrap();
                let b = minus.scatter(&L, pol).unwrap();
                prop_assert!(a.absorptance >= -1e-12);
                prop_assert!(a.reflectance + a.transmittance <= 1.0 + 1e-12);
                prop_assert!((a.reflectance - b.reflectance).abs() < 1e-12);
                prop_assert!((a.transmittance - b.transmittance).abs() < 1e-12);
            }
        }

        #[test]
        fn row_norms_match_absorptance(w in 0.3f64..3.0, beta in -0.98f64..0.98, l in 0.1f64..5.0) {
            let geometry = SlabGeometry::new(l).unwrap();
            let m = model(w, beta);
            for pol in Polarization::BOTH {
                let s = m.scatter(&geometry, pol).unwrap();
                let a = m.absorption_matrix(&geometry, pol).unwrap();
                prop_assert!(a.row_norm_deviation(s.absorptance) <= 1e-8 * s.absorptance.max(1e-6));
            }
        }

        #[test]
        fn transfer_matrix_agrees(w in 0.3f64..3.0, beta in -0.95f64..0.95) {
            let m = model(w, beta);
            for pol in Polarization::BOTH {
                let s = m.scatter(&L, pol).unwrap();
                let t = m.transfer_matrix(&L, pol).unwrap();
                prop_assert!((s.reflection - t.reflection).norm() < 1e-10);
                prop_assert!((s.transmission - t.transmission).norm() < 1e-10);
            }
        }
    }
}
