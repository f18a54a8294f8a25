//! Noise and photon statistics of light transmitted through the slab.
//!
//! The input is a coherent state from the left, vacuum from the right and
//! thermal noise from the slab at temperature `Θ`.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scattering::{Polarization, ScatteringResult};

/// Thermal environment of the slab, stored as the ratio `t = ħω₀ / (k_B Θ)`.
///
/// `t = +inf` encodes zero temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalEnvironment {
    t: f64,
}

impl ThermalEnvironment {
    pub const ZERO_TEMPERATURE: Self = Self { t: f64::INFINITY };

    pub fn new(t: f64) -> Result<Self> {
        if t.is_nan() || t <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "temperature ratio must be positive, got {t}"
            )));
        }
        Ok(Self { t })
    }

    pub fn ratio(&self) -> f64 {
        self.t
    }
}

impl Serialize for ThermalEnvironment {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.t.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.t)
        }
    }
}

impl<'de> Deserialize<'de> for ThermalEnvironment {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Number(f64),
            Text(String),
        }
        let t = match Repr::deserialize(d)? {
            Repr::Number(t) => t,
            Repr::Text(s) => parse_ratio(&s).map_err(serde::de::Error::custom)?,
        };
        Self::new(t).map_err(serde::de::Error::custom)
    }
}

/// Parses a temperature ratio, accepting `inf` or `infinity` for zero temperature.
pub fn parse_ratio(s: &str) -> std::result::Result<f64, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "inf" | "+inf" | "infinity" | "+infinity" => Ok(f64::INFINITY),
        other => other
            .parse::<f64>()
            .map_err(|_| format!("invalid temperature ratio '{s}'")),
    }
}

/// Mean photon number `1 / (exp(gamma w t) - 1)` of the slab noise.
///
/// `gamma` is the Lorentz factor: the moving slab radiates at the boosted
/// frequency `gamma w`.
pub fn thermal_occupation(w: f64, gamma: f64, env: ThermalEnvironment) -> f64 {
    if env.t.is_infinite() {
        return 0.0;
    }
    let x = gamma * w * env.t;
    // exp_m1 overflows to +inf for large arguments, giving a clean zero
    1.0 / x.exp_m1()
}

/// Mean noise photon flux `N A` leaving through one port.
pub fn noise_flux(occupation: f64, absorptance: f64) -> f64 {
    occupation * absorptance
}

/// Squeezing parameters `(S_X, S_Y)`, both `4 Var - 1` with `Var = (1 + 2 flux) / 4`.
pub fn squeezing_parameter(noise_flux: f64) -> (f64, f64) {
    let s = 2.0 * noise_flux;
    (s, s)
}

/// Coherent state incident from the left.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherentInput {
    /// Mean photon number `|alpha|^2`.
    pub alpha_sq: f64,
    pub pol: Polarization,
}

impl CoherentInput {
    pub fn new(alpha_sq: f64, pol: Polarization) -> Result<Self> {
        if !alpha_sq.is_finite() || alpha_sq < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "mean photon number must be finite and non-negative, got {alpha_sq}"
            )));
        }
        Ok(Self { alpha_sq, pol })
    }
}

/// Mandel parameter of the transmitted field.
pub fn mandel_q(
    transmission: Complex64,
    reflection: Complex64,
    input: &CoherentInput,
    occupation: f64,
) -> f64 {
    let t2 = transmission.norm_sqr();
    let absorptance = 1.0 - t2 - reflection.norm_sqr();
    let signal = t2 * input.alpha_sq;
    let noise = occupation * absorptance;
    let den = signal + noise;
    if den.abs() < 1e-300 {
        return 0.0;
    }
    (2.0 * signal * noise - noise * noise) / den
}

/// All transmitted-field observables at one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ObservablePoint {
    pub occupation: f64,
    pub noise_flux: f64,
    pub s_x: f64,
    pub s_y: f64,
    pub q: f64,
}

impl ObservablePoint {
    /// `gamma` is the Lorentz factor of the slab.
    pub fn evaluate(
        scattering: &ScatteringResult,
        gamma: f64,
        env: ThermalEnvironment,
        input: &CoherentInput,
    ) -> Self {
        let occupation = thermal_occupation(scattering.w, gamma, env);
        Self::with_occupation(scattering, occupation, input)
    }

    /// Observables for an explicitly supplied occupation.
    pub fn with_occupation(
        scattering: &ScatteringResult,
        occupation: f64,
        input: &CoherentInput,
    ) -> Self {
        let flux = noise_flux(occupation, scattering.absorptance);
        let (s_x, s_y) = squeezing_parameter(flux);
        let q = mandel_q(
            scattering.transmission,
            scattering.reflection,
            input,
            occupation,
        );
        Self {
            occupation,
            noise_flux: flux,
            s_x,
            s_y,
            q,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::lorentz_factor;
    use crate::rest_frame::LorentzParams;
    use crate::scattering::{SlabGeometry, SlabModel};
    use proptest::prelude::*;

    fn point(w: f64, beta: f64) -> ScatteringResult {
        SlabModel::new(&LorentzParams::REFERENCE, w, beta)
            .unwrap()
            .scatter(&SlabGeometry::UNIT, Polarization::X)
            .unwrap()
    }

    fn env() -> ThermalEnvironment {
        ThermalEnvironment::new(10.0 / 6.0).unwrap()
    }

    #[test]
    fn occupation_values() {
        assert_eq!(
            thermal_occupation(1.0, 1.0, ThermalEnvironment::ZERO_TEMPERATURE),
            0.0
        );
        let e = ThermalEnvironment::new(2f64.ln()).unwrap();
        assert!((thermal_occupation(1.0, 1.0, e) - 1.0).abs() < 1e-15);
        assert!((thermal_occupation(1.0, 1.0, env()) - 0.23285651806098621611).abs() < 1e-15);
        let hot = ThermalEnvironment::new(1e-3).unwrap();
        assert!(thermal_occupation(1.0, 1.0, hot) > 999.0);
        let cold = ThermalEnvironment::new(1e4).unwrap();
        assert_eq!(thermal_occupation(1.0, 1e3, cold), 0.0);
    }

    #[test]
    fn rejects_non_positive_temperature_ratio() {
        assert!(ThermalEnvironment::new(0.0).is_err());
        assert!(ThermalEnvironment::new(-1.0).is_err());
        assert!(ThermalEnvironment::new(f64::NAN).is_err());
        assert!(CoherentInput::new(-1.0, Polarization::X).is_err());
    }

    #[test]
    fn serde_round_trip_of_infinite_ratio() {
        let json = serde_json::to_string(&ThermalEnvironment::ZERO_TEMPERATURE).unwrap();
        assert_eq!(json, "\"inf\"");
        let back: ThermalEnvironment = serde_json::from_str(&json).unwrap();
        assert!(back.ratio().is_infinite());
        let finite: ThermalEnvironment = serde_json::from_str("1.5").unwrap();
        assert_eq!(finite.ratio(), 1.5);
        assert!(serde_json::from_str::<ThermalEnvironment>("\"warm\"").is_err());
        assert!(serde_json::from_str::<ThermalEnvironment>("0").is_err());
    }

    #[test]
    fn trivial_limits() {
        assert_eq!(noise_flux(0.0, 0.3), 0.0);
        assert_eq!(noise_flux(0.4, 0.0), 0.0);
        assert_eq!(squeezing_parameter(0.0), (0.0, 0.0));
        let input = CoherentInput::new(16.0, Polarization::X).unwrap();
        let s = point(1.0, 0.3);
        assert_eq!(mandel_q(s.transmission, s.reflection, &input, 0.0), 0.0);
        let vacuum = CoherentInput::new(0.0, Polarization::X).unwrap();
        let lossless = Complex64::new(1.0, 0.0);
        assert_eq!(
            mandel_q(lossless, Complex64::new(0.0, 0.0), &vacuum, 0.3),
            0.0
        );
    }

    #[test]
    fn slab_at_rest_fixture() {
        let input = CoherentInput::new(16.0, Polarization::X).unwrap();
        let obs = ObservablePoint::evaluate(&point(1.0, 0.0), 1.0, env(), &input);
        assert!((obs.noise_flux - 0.032533663846878576619).abs() < 1e-15);
        assert!((obs.s_x - 0.065067327693757153238).abs() < 1e-15);
        assert_eq!(obs.s_x, obs.s_y);
        assert!((obs.q - 0.064808152353420497443).abs() < 1e-14);
    }

    #[test]
    fn fast_slab_is_nearly_vacuum() {
        let beta = 0.999;
        let gamma = lorentz_factor(beta).unwrap();
        let input = CoherentInput::new(16.0, Polarization::X).unwrap();
        let obs = ObservablePoint::evaluate(&point(1.0, beta), gamma, env(), &input);
        assert!(obs.s_x < 1e-2);
    }

    #[test]
    fn boosted_occupation_differs_from_rest_frequency() {
        let beta = 0.6;
        let gamma = lorentz_factor(beta).unwrap();
        let s = point(1.0, beta);
        let input = CoherentInput::new(16.0, Polarization::X).unwrap();
        let right = ObservablePoint::evaluate(&s, gamma, env(), &input);
        let wrong =
            ObservablePoint::with_occupation(&s, thermal_occupation(1.0, 1.0, env()), &input);
        assert!((right.s_x - wrong.s_x).abs() > 1e-3);
        assert!(right.s_x < wrong.s_x);
    }

    proptest! {
        #[test]
        fn squeezing_non_increasing_in_ratio(
            w in 0.5f64..2.0,
            beta in -0.99f64..0.99,
            t0 in 0.05f64..5.0,
            dt in 0.0f64..5.0,
        ) {
            let gamma = lorentz_factor(beta).unwrap();
            let s = point(w, beta);
            let input = CoherentInput::new(16.0, Polarization::X).unwrap();
            let hot = ObservablePoint::evaluate(&s, gamma, ThermalEnvironment::new(t0).unwrap(), &input);
            let cold = ObservablePoint::evaluate(&s, gamma, ThermalEnvironment::new(t0 + dt).unwrap(), &input);
            prop_assert!(cold.s_x <= hot.s_x);
            prop_assert!(hot.s_x >= 0.0);
        }

        #[test]
        fn super_poissonian_regime(
            w in 0.5f64..2.0,
            beta in -0.99f64..0.99,
            t in 0.05f64..5.0,
            alpha_sq in 0.0f64..50.0,
        ) {
            let gamma = lorentz_factor(beta).unwrap();
            let s = point(w, beta);
            let input = CoherentInput::new(alpha_sq, Polarization::X).unwrap();
            let obs = ObservablePoint::evaluate(&s, gamma, ThermalEnvironment::new(t).unwrap(), &input);
            let x = obs.noise_flux;
            if x > 0.0 && 2.0 * s.transmittance * alpha_sq > x {
                prop_assert!(obs.q > 0.0);
            }
        }
    }
}
