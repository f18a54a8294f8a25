mod common;

use movslab::effective_medium::{green_tensor_coordinate, max_abs};
use movslab::{Kinematics, LorentzParams, RestFrameResponse};

#[test]
fn coordinate_green_tensor_matches_contour_integral() {
    for &(w, beta) in &[(1.0, 0.5), (0.7, -0.3), (1.6, 0.9), (1.0, 0.0)] {
        let rest = RestFrameResponse::evaluate(w, &LorentzParams::REFERENCE).unwrap();
        let kin = Kinematics::new(rest.n, beta).unwrap();
        for &dz in &[0.7, -0.7, 2.5, -0.1] {
            let closed = green_tensor_coordinate(dz, 0.0, w, rest.eps, rest.mu, &kin);
            let contour = common::contour_green(dz, w, rest.eps, &kin, 256);
            let dev = max_abs(&(closed - contour));
            assert!(
                dev < 1e-12 * max_abs(&closed).max(1.0),
                "w={w} beta={beta} dz={dz}: {dev:e}"
            );
        }
    }
}

#[test]
fn coordinate_green_tensor_is_reciprocal() {
    let rest = RestFrameResponse::evaluate(1.2, &LorentzParams::REFERENCE).unwrap();
    let kin = Kinematics::new(rest.n, 0.4).unwrap();
    let g = green_tensor_coordinate(0.3, -0.4, 1.2, rest.eps, rest.mu, &kin);
    assert!(max_abs(&(g - g.transpose())) < 1e-15);
}
