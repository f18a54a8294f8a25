//! Grid evaluation.

use rayon::prelude::*;

use crate::observables::{CoherentInput, ObservablePoint};
use crate::scattering::{Polarization, SlabModel};

use super::config::{OutputKind, SweepConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RowCoefficients {
    pub r2: f64,
    pub t2: f64,
    pub a: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RowObservables {
    pub s_x: f64,
    pub q: f64,
    pub n: f64,
}

/// One `(w, beta, pol)` sample. Points that could not be evaluated carry a
/// `flag` with the reason and no values.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub w: f64,
    pub beta: f64,
    pub pol: Polarization,
    pub coefficients: Option<RowCoefficients>,
    pub observables: Option<RowObservables>,
    pub flag: Option<String>,
}

impl SweepRow {
    fn flagged(w: f64, beta: f64, pol: Polarization, reason: String) -> Self {
        Self {
            w,
            beta,
            pol,
            coefficients: None,
            observables: None,
            flag: Some(reason),
        }
    }
}

fn evaluate_cell(config: &SweepConfig, w: f64, beta: f64) -> Vec<SweepRow> {
    let model = match SlabModel::new(&config.material, w, beta) {
        Ok(m) => m,
        Err(e) => {
            return config
                .polarizations
                .iter()
                .map(|&pol| SweepRow::flagged(w, beta, pol, e.to_string()))
                .collect()
        }
    };
    let geometry = config.geometry();
    config
        .polarizations
        .iter()
        .map(|&pol| match model.scatter(&geometry, pol) {
            Err(e) => SweepRow::flagged(w, beta, pol, e.to_string()),
            Ok(s) => {
                let coefficients =
                    config
                        .emits(OutputKind::Coefficients)
                        .then_some(RowCoefficients {
                            r2: s.reflectance,
                            t2: s.transmittance,
                            a: s.absorptance,
                        });
                let observables = config.emits(OutputKind::Observables).then(|| {
                    let input = CoherentInput {
                        alpha_sq: config.alpha_sq,
                        pol,
                    };
                    let obs = ObservablePoint::evaluate(
                        &s,
                        model.kinematics.gamma,
                        config.t_thermal,
                        &input,
                    );
                    RowObservables {
                        s_x: obs.s_x,
                        q: obs.q,
                        n: obs.occupation,
                    }
                });
                SweepRow {
                    w,
                    beta,
                    pol,
                    coefficients,
                    observables,
                    flag: None,
                }
            }
        })
        .collect()
}

/// Evaluates every grid point, `w` outermost, then `beta`, then polarization.
///
/// Points are evaluated in parallel on the global rayon pool; the order of
/// the returned rows does not depend on the scheduling.
pub fn run_sweep(config: &SweepConfig) -> Vec<SweepRow> {
    let ws = config.w_grid.values();
    let betas = config.beta_grid.values();
    let nb = betas.len();
    (0..ws.len() * nb)
        .into_par_iter()
        .map(|idx| evaluate_cell(config, ws[idx / nb], betas[idx % nb]))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// [`run_sweep`] on a dedicated pool with `threads` workers.
pub fn run_sweep_with_threads(
    config: &SweepConfig,
    threads: usize,
) -> Result<Vec<SweepRow>, rayon::ThreadPoolBuildError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()?;
    Ok(pool.install(|| run_sweep(config)))
}
