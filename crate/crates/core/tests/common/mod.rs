//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use movslab::effective_medium::{green_tensor_reciprocal, CMatrix3};
use movslab::Kinematics;
use num_complex::Complex64;

/// Textbook three-layer Airy amplitudes for a non-magnetic slab at rest with
/// index `n`, referred to the slab faces.
pub fn airy_slab(n: Complex64, w: f64, thickness: f64) -> (Complex64, Complex64) {
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let r12 = (one - n) / (one + n);
    let r23 = (n - one) / (n + one);
    let t12 = 2.0 / (one + n);
    let t23 = 2.0 * n / (n + one);
    let delta = n * w * thickness;
    let round_trip = (2.0 * i * delta).exp();
    let den = one + r12 * r23 * round_trip;
    let r = (r12 + r23 * round_trip) / den;
    let t = t12 * t23 * (i * delta).exp() / den;
    let faces = (-i * w * thickness).exp();
    (faces * r, faces * t)
}

/// Coordinate-space Green tensor from a trapezoidal contour integral of the
/// reciprocal-space tensor around the outgoing pole.
pub fn contour_green(dz: f64, w: f64, eps: Complex64, kin: &Kinematics, nodes: usize) -> CMatrix3 {
    let i = Complex64::new(0.0, 1.0);
    let pole = kin.n_eff * w * dz.signum();
    let radius = 0.5 * pole.norm();
    let mut acc = CMatrix3::zeros();
    for j in 0..nodes {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / nodes as f64;
        let offset = radius * Complex64::new(theta.cos(), theta.sin());
        let k_z = pole + offset;
        let g = green_tensor_reciprocal(k_z, w, eps, kin).expect("contour avoids poles");
        let dk = i * offset * (2.0 * std::f64::consts::PI / nodes as f64);
        acc += g * ((i * k_z * dz).exp() * dk);
    }
    // lower-half-plane closure runs clockwise
    acc * Complex64::new(dz.signum() / (2.0 * std::f64::consts::PI), 0.0)
}
