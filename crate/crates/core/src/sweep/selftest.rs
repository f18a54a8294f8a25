//! Built-in consistency checks of the numerical kernels.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::effective_medium::{
    green_tensor_reciprocal, loss_block_min_eigenvalue, max_abs, wave_operator, CMatrix3,
    EffectiveMedium,
};
use crate::kinematics::Kinematics;
use crate::numeric::{c, linspace};
use crate::rest_frame::{LorentzParams, RestFrameResponse};
use crate::scattering::{Polarization, SlabGeometry, SlabModel};

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub samples: usize,
    pub note: Option<String>,
}

impl SuiteResult {
    fn new(name: &'static str, max_deviation: f64, tolerance: f64, samples: usize) -> Self {
        Self {
            name,
            passed: samples > 0 && max_deviation <= tolerance,
            max_deviation,
            tolerance,
            samples,
            note: None,
        }
    }

    fn with_note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:<22} max deviation {:.3e} (tolerance {:.0e}, {} samples)",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.max_deviation,
            self.tolerance,
            self.samples
        )?;
        if let Some(note) = &self.note {
            write!(f, "; {note}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelftestReport {
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            writeln!(f, "{s}")?;
        }
        write!(
            f,
            "{}",
            if self.passed() {
                "all suites passed"
            } else {
                "self-test FAILED"
            }
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelftestOptions {
    pub material: LorentzParams,
    pub seed: u64,
    /// Perturbs every absorption matrix before the row-norm check.
    pub corrupt_absorption: bool,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        Self {
            material: LorentzParams::REFERENCE,
            seed: 0x5eed,
            corrupt_absorption: false,
        }
    }
}

pub fn run_selftest() -> SelftestReport {
    run_selftest_with(&SelftestOptions::default())
}

pub fn run_selftest_with(opts: &SelftestOptions) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    SelftestReport {
        suites: vec![
            oracle_equivalence(&opts.material),
            velocity_parity(&opts.material),
            row_norms(&opts.material, opts.corrupt_absorption),
            square_root_product(&mut rng),
            helmholtz_residual(&opts.material, &mut rng),
            lossless_energy(&opts.material.lossless()),
        ],
    }
}

fn grid_models(material: &LorentzParams, n: usize, beta_max: f64) -> Vec<SlabModel> {
    let mut out = Vec::with_capacity(n * n);
    for w in linspace(0.5, 2.0, n) {
        for beta in linspace(-beta_max, beta_max, n) {
            if let Ok(m) = SlabModel::new(material, w, beta) {
                out.push(m);
            }
        }
    }
    out
}

fn oracle_equivalence(material: &LorentzParams) -> SuiteResult {
    let geometry = SlabGeometry::UNIT;
    let mut worst = 0.0f64;
    let mut samples = 0;
    for m in grid_models(material, 100, 0.95) {
        for pol in Polarization::BOTH {
            let (Ok(s), Ok(t)) = (m.scatter(&geometry, pol), m.transfer_matrix(&geometry, pol))
            else {
                worst = f64::INFINITY;
                continue;
            };
            worst = worst
                .max((s.reflection - t.reflection).norm())
                .max((s.transmission - t.transmission).norm());
            samples += 1;
        }
    }
    SuiteResult::new("oracle-equivalence", worst, 1e-10, samples)
}

fn velocity_parity(material: &LorentzParams) -> SuiteResult {
    let geometry = SlabGeometry::UNIT;
    let mut worst = 0.0f64;
    let mut samples = 0;
    for w in linspace(0.5, 2.0, 50) {
        for beta in linspace(0.0, 0.99, 50) {
            for pol in Polarization::BOTH {
                let plus =
                    SlabModel::new(material, w, beta).and_then(|m| m.scatter(&geometry, pol));
                let minus =
                    SlabModel::new(material, w, -beta).and_then(|m| m.scatter(&geometry, pol));
                match (plus, minus) {
                    (Ok(a), Ok(b)) => {
                        worst = worst
                            .max((a.reflectance - b.reflectance).abs())
                            .max((a.transmittance - b.transmittance).abs());
                        samples += 1;
                    }
                    (Err(_), Err(_)) => {}
                    _ => worst = f64::INFINITY,
                }
            }
        }
    }
    SuiteResult::new("velocity-parity", worst, 1e-12, samples)
}

fn row_norms(material: &LorentzParams, corrupt: bool) -> SuiteResult {
    let geometry = SlabGeometry::UNIT;
    let mut worst = 0.0f64;
    let mut samples = 0;
    for m in grid_models(material, 100, 0.95) {
        for pol in Polarization::BOTH {
            let Ok(s) = m.scatter(&geometry, pol) else {
                continue;
            };
            if s.absorptance <= 1e-6 {
                continue;
            }
            let Ok(mut a) = m.absorption_matrix(&geometry, pol) else {
                worst = f64::INFINITY;
                continue;
            };
            if corrupt {
                a.0[0][0] *= 1.01;
                a.0[1][1] *= 0.99;
            }
            worst = worst.max(a.row_norm_deviation(s.absorptance) / s.absorptance);
            samples += 1;
        }
    }
    SuiteResult::new("row-norm", worst, 1e-8, samples)
}

/// Random passive comoving constants and speed.
pub fn random_passive_medium<R: Rng>(rng: &mut R) -> (RestFrameResponse, f64) {
    let eps = c(rng.gen_range(0.5..5.0), rng.gen_range(1e-3..2.0));
    let mu = c(rng.gen_range(0.5..3.0), rng.gen_range(1e-3..1.0));
    let beta = rng.gen_range(-0.95..0.95);
    (RestFrameResponse::from_constants(eps, mu), beta)
}

/// The closed-form root must square to the loss matrix everywhere and
/// reproduce it as `S S^dagger` wherever the `yz` block is positive
/// semidefinite. Indefinite blocks, which occur for a moving medium, admit no
/// such factorization and are only counted.
fn square_root_product<R: Rng>(rng: &mut R) -> SuiteResult {
    let mut worst = 0.0f64;
    let mut samples = 0;
    let mut indefinite = 0;
    while samples < 2000 {
        let (rest, beta) = random_passive_medium(rng);
        let Ok(kin) = Kinematics::new(rest.n, beta) else {
            continue;
        };
        let Ok(med) = EffectiveMedium::on_shell(&rest, &kin, 1.0) else {
            worst = f64::INFINITY;
            samples += 2;
            continue;
        };
        for (x, root) in [
            (&med.eps_loss, &med.eps_root),
            (&med.mu_inv_loss, &med.mu_inv_root),
        ] {
            let scale = max_abs(x).max(1.0);
            let mut dev = root.square_residual(x) / scale;
            if loss_block_min_eigenvalue(x) >= 0.0 {
                dev = dev.max(root.product_residual(x) / scale);
            } else {
                indefinite += 1;
            }
            worst = worst.max(dev);
            samples += 1;
        }
    }
    SuiteResult::new("square-root-product", worst, 1e-10, samples).with_note(format!(
        "{indefinite} indefinite loss blocks checked for S^2 = X only"
    ))
}

fn helmholtz_residual<R: Rng>(material: &LorentzParams, rng: &mut R) -> SuiteResult {
    let mut worst = 0.0f64;
    let mut samples = 0;
    while samples < 100 {
        let w = rng.gen_range(0.5..2.0);
        let beta = rng.gen_range(-0.95..0.95);
        let k_z = c(rng.gen_range(-3.0..3.0), rng.gen_range(-0.5..0.5));
        let Ok(rest) = RestFrameResponse::evaluate(w, material) else {
            continue;
        };
        let Ok(kin) = Kinematics::new(rest.n, beta) else {
            continue;
        };
        let Ok(g) = green_tensor_reciprocal(k_z, w, rest.eps, &kin) else {
            continue;
        };
        let op = wave_operator(k_z, w, rest.eps, rest.mu, &kin);
        worst = worst.max(max_abs(&(op * g - CMatrix3::identity())));
        samples += 1;
    }
    SuiteResult::new("helmholtz-residual", worst, 1e-10, samples)
}

fn lossless_energy(material: &LorentzParams) -> SuiteResult {
    let geometry = SlabGeometry::UNIT;
    let mut worst = 0.0f64;
    let mut samples = 0;
    let mut skipped = 0;
    for m_result in linspace(0.5, 2.0, 41).into_iter().flat_map(|w| {
        linspace(-0.95, 0.95, 41)
            .into_iter()
            .map(move |beta| SlabModel::new(material, w, beta))
    }) {
        let Ok(m) = m_result else {
            skipped += 1;
            continue;
        };
        for pol in Polarization::BOTH {
            let Ok(s) = m.scatter(&geometry, pol) else {
                skipped += 1;
                continue;
            };
            worst = worst.max((s.reflectance + s.transmittance - 1.0).abs());
            samples += 1;
        }
    }
    SuiteResult::new("lossless-energy", worst, 1e-10, samples)
        .with_note(format!("{skipped} singular points skipped"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_selftest_passes() {
        let report = run_selftest();
        assert!(report.passed(), "{report}");
        assert_eq!(report.suites.len(), 6);
    }

    #[test]
    fn corrupted_absorption_matrix_fails_row_norm_suite() {
        let report = run_selftest_with(&SelftestOptions {
            corrupt_absorption: true,
            ..SelftestOptions::default()
        });
        assert!(!report.passed());
        assert!(!report.suite("row-norm").unwrap().passed);
        assert!(report.suite("oracle-equivalence").unwrap().passed);
    }
}
