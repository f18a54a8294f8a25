//! Sweep configuration and figure presets.

use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::linspace;
use crate::observables::ThermalEnvironment;
use crate::rest_frame::LorentzParams;
use crate::scattering::{Polarization, SlabGeometry};

/// Largest speed allowed anywhere on a sweep grid.
pub const MAX_GRID_BETA: f64 = 0.999;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("malformed configuration: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error("unknown preset '{0}', expected fig2, fig3, fig4 or fig5")]
    UnknownPreset(String),
}

/// Evenly spaced axis, end points included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl GridSpec {
    pub const fn new(min: f64, max: f64, count: usize) -> Self {
        Self { min, max, count }
    }

    pub fn values(&self) -> Vec<f64> {
        linspace(self.min, self.max, self.count)
    }

    fn validate(&self, axis: &str) -> Result<(), ConfigError> {
        if self.count == 0 {
            return Err(ConfigError::Invalid(format!(
                "{axis}.count must be at least 1"
            )));
        }
        if !self.min.is_finite() || !self.max.is_finite() || self.min > self.max {
            return Err(ConfigError::Invalid(format!(
                "{axis} needs finite bounds with min <= max"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputKind {
    /// `R2`, `T2` and `A` columns.
    Coefficients,
    /// `S_X`, `Q` and `N` columns.
    Observables,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(ConfigError::Invalid(format!("unknown format '{other}'"))),
        }
    }
}

fn default_thickness() -> f64 {
    1.0
}

fn default_temperature() -> ThermalEnvironment {
    ThermalEnvironment::ZERO_TEMPERATURE
}

fn default_polarizations() -> Vec<Polarization> {
    vec![Polarization::X]
}

fn default_outputs() -> Vec<OutputKind> {
    vec![OutputKind::Coefficients, OutputKind::Observables]
}

/// A complete sweep description, parsed from a single JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default)]
    pub material: LorentzParams,
    #[serde(rename = "thickness_L", default = "default_thickness")]
    pub thickness: f64,
    pub w_grid: GridSpec,
    pub beta_grid: GridSpec,
    #[serde(default = "default_temperature")]
    pub t_thermal: ThermalEnvironment,
    #[serde(default)]
    pub alpha_sq: f64,
    #[serde(default = "default_polarizations")]
    pub polarizations: Vec<Polarization>,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<OutputKind>,
    #[serde(default)]
    pub format: OutputFormat,
}

impl SweepConfig {
    pub fn from_json_str(s: &str) -> Result<Self, ConfigError> {
        let config: Self = serde_json::from_str(s)?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.material
            .validate()
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        SlabGeometry::new(self.thickness).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        self.w_grid.validate("w_grid")?;
        self.beta_grid.validate("beta_grid")?;
        if self.w_grid.min <= 0.0 {
            return Err(ConfigError::Invalid("w_grid.min must be positive".into()));
        }
        if self.beta_grid.min.abs() > MAX_GRID_BETA || self.beta_grid.max.abs() > MAX_GRID_BETA {
            return Err(ConfigError::Invalid(format!(
                "beta_grid must stay within [-{MAX_GRID_BETA}, {MAX_GRID_BETA}]"
            )));
        }
        if !self.alpha_sq.is_finite() || self.alpha_sq < 0.0 {
            return Err(ConfigError::Invalid(
                "alpha_sq must be finite and non-negative".into(),
            ));
        }
        if self.polarizations.is_empty() {
            return Err(ConfigError::Invalid(
                "polarizations must not be empty".into(),
            ));
        }
        if self.outputs.is_empty() {
            return Err(ConfigError::Invalid("outputs must not be empty".into()));
        }
        Ok(())
    }

    pub fn geometry(&self) -> SlabGeometry {
        SlabGeometry {
            thickness: self.thickness,
        }
    }

    pub fn emits(&self, kind: OutputKind) -> bool {
        self.outputs.contains(&kind)
    }

    pub fn row_count(&self) -> usize {
        self.w_grid.count * self.beta_grid.count * self.polarizations.len()
    }
}

/// Built-in sweeps reproducing the reference figures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Reflectance, transmittance and absorptance, x polarization.
    Fig2,
    /// Same map for y polarization.
    Fig3,
    /// Squeezing parameter at finite temperature.
    Fig4,
    /// Mandel parameter at finite temperature.
    Fig5,
}

impl Preset {
    pub const ALL: [Self; 4] = [Self::Fig2, Self::Fig3, Self::Fig4, Self::Fig5];
    pub const FIGURE_TEMPERATURE_RATIO: f64 = 10.0 / 6.0;
    pub const FIGURE_ALPHA_SQ: f64 = 16.0;

    pub fn name(self) -> &'static str {
        match self {
            Self::Fig2 => "fig2",
            Self::Fig3 => "fig3",
            Self::Fig4 => "fig4",
            Self::Fig5 => "fig5",
        }
    }

    pub fn config(self) -> SweepConfig {
        let (pol, t_thermal, alpha_sq, outputs) = match self {
            Self::Fig2 => (
                Polarization::X,
                default_temperature(),
                0.0,
                vec![OutputKind::Coefficients],
            ),
            Self::Fig3 => (
                Polarization::Y,
                default_temperature(),
                0.0,
                vec![OutputKind::Coefficients],
            ),
            Self::Fig4 | Self::Fig5 => (
                Polarization::X,
                ThermalEnvironment::new(Self::FIGURE_TEMPERATURE_RATIO)
                    .expect("preset temperature is positive"),
                Self::FIGURE_ALPHA_SQ,
                default_outputs(),
            ),
        };
        SweepConfig {
            material: LorentzParams::REFERENCE,
            thickness: 1.0,
            w_grid: GridSpec::new(0.5, 2.0, 200),
            beta_grid: GridSpec::new(-0.99, 0.99, 200),
            t_thermal,
            alpha_sq,
            polarizations: vec![pol],
            outputs,
            format: OutputFormat::Csv,
        }
    }
}

impl FromStr for Preset {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        Self::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| ConfigError::UnknownPreset(s.to_string()))
    }
}
