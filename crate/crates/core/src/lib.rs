//! Scattering of quantum light by a dissipative magneto-dielectric slab that
//! moves uniformly parallel to its faces.
//!
//! The crate is organised bottom-up:
//!
//! * [`rest_frame`]: Lorentz-oscillator permittivity and permeability in the
//!   comoving frame.
//! * [`kinematics`]: relativistic parameters of the moving medium and the
//!   laboratory-frame refractive index.
//! * [`effective_medium`]: laboratory-frame constitutive tensors, the square
//!   roots of their absorptive parts, noise coupling constants and the
//!   Green tensors of the unbounded moving medium.
//! * [`scattering`]: slab reflection and transmission, the transfer-matrix
//!   cross-check and the absorption matrix of the input-output relation.
//! * [`observables`]: thermal noise, quadrature squeezing and the Mandel
//!   parameter of a transmitted coherent state.
//! * [`sweep`]: parameter grids, figure presets, the self-test runner and
//!   CSV/JSON emission.
//!
//! All frequencies are dimensionless, `w = ω/ω₀`, and lengths are measured in
//! units of `c/ω₀`.

#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod effective_medium;
pub mod error;
pub mod kinematics;
pub mod numeric;
pub mod observables;
pub mod rest_frame;
pub mod scattering;
pub mod sweep;

pub use effective_medium::{CMatrix3, EffectiveMedium};
pub use error::{Error, Result};
pub use kinematics::Kinematics;
pub use observables::{CoherentInput, ObservablePoint, ThermalEnvironment};
pub use rest_frame::{LorentzParams, RestFrameResponse};
pub use scattering::{AbsorptionMatrix, Polarization, ScatteringResult, SlabGeometry, SlabModel};
