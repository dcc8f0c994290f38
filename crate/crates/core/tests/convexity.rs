use std::sync::Arc;

use renorm_core::config::seeded_rng;
use renorm_core::oracle::convexity_midpoint_scan;
use renorm_core::slice::{make_model_omega, omega_norm_oracle, slice_norm_oracle, AlphaTuple, TheoremKind};
use renorm_core::smooth::{build_schedule, LevelSetNorm};
use renorm_core::*;

fn worst(norm: &NormOracle, samples: usize) -> f64 {
    let mut rng = seeded_rng(9, 0);
    convexity_midpoint_scan(norm, samples, &mut rng).unwrap().value
}

#[test]
fn reference_norms() {
    for norm in [NormOracle::l1(3), NormOracle::l2(3), NormOracle::linf(3)] {
        assert!(worst(&norm, 2000) <= 1e-12, "{}", norm.label());
    }
}

#[test]
fn slice_section() {
    let a = AlphaTuple::new(
        CoordVector::basis(3, 2),
        CoordVector::basis(3, 1),
        CoordFunctional::basis(3, 2),
        CoordFunctional::basis(3, 1),
        0.1,
        1.1,
    )
    .unwrap();
    assert!(worst(&slice_norm_oracle(&a), 2000) <= 1e-9);
}

#[test]
fn omega_norms() {
    for kind in [TheoremKind::A, TheoremKind::B, TheoremKind::C] {
        let omega = make_model_omega(kind, 0.1, 12).unwrap();
        assert!(worst(&omega_norm_oracle(&omega), 2000) <= 1e-9, "{kind:?}");
    }
}

#[test]
fn smooth_levels() {
    let l = Arc::new(LevelSetNorm::new(&build_schedule(0.25, 5).unwrap()).unwrap());
    assert!(worst(&l.level_oracle(3), 2000) <= 1e-9);
    assert!(worst(&l.oracle(), 1000) <= 1e-9);
}
