mod common;

use movslab::numeric::{c, linspace};
use movslab::scattering::fresnel_slab;
use movslab::{LorentzParams, Polarization, SlabGeometry, SlabModel};
use proptest::prelude::*;

#[test]
fn dispersive_dielectric_at_rest_matches_airy_formula() {
    let material = LorentzParams {
        omega_pm: 0.0,
        ..LorentzParams::REFERENCE
    };
    for l in [0.3, 1.0, 4.0] {
        let geometry = SlabGeometry::new(l).unwrap();
        for w in linspace(0.5, 2.0, 151) {
            let m = SlabModel::new(&material, w, 0.0).unwrap();
            let (r, t) = common::airy_slab(m.rest.n, w, l);
            for pol in Polarization::BOTH {
                let s = m.scatter(&geometry, pol).unwrap();
                assert!((s.reflection - r).norm() < 1e-12, "w={w} L={l}");
                assert!((s.transmission - t).norm() < 1e-12, "w={w} L={l}");
            }
        }
    }
}

proptest! {
    #[test]
    fn constant_index_matches_airy_formula(
        re in 1.0f64..6.0,
        im in 0.0f64..1.0,
        w in 0.1f64..5.0,
        l in 0.1f64..3.0,
    ) {
        let n = c(re, im);
        let s = fresnel_slab(n, c(1.0, 0.0), w, l).unwrap();
        let (r, t) = common::airy_slab(n, w, l);
        prop_assert!((s.reflection - r).norm() < 1e-12);
        prop_assert!((s.transmission - t).norm() < 1e-12);
    }
}
