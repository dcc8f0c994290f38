use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use renorm_core::config::seeded_rng;
use renorm_core::norm::q_functional_raw;
use renorm_core::oracle::{dual_by_sphere_scan, gauge_by_ray_scan, hilbert_q_oracle, ScanGrid};
use renorm_core::sampling::uniform_cube;
use renorm_core::*;

fn vec_strategy(dim: usize) -> impl Strategy<Value = CoordVector> {
    prop::collection::vec(-3.0f64..3.0, dim).prop_map(CoordVector::from_values)
}

proptest! {
    #[test]
    fn q_is_nonnegative(x in vec_strategy(5), y in vec_strategy(5)) {
        for norm in [NormOracle::l1(5), NormOracle::l2(5), NormOracle::linf(5)] {
            prop_assert!(q_functional_raw(&norm, &x, &y) >= -1e-12);
        }
    }

    #[test]
    fn q_of_quadratic_mean_is_linear(
        x in vec_strategy(6),
        y in vec_strategy(6),
        a1 in 0.1f64..4.0,
        a2 in 0.1f64..4.0,
    ) {
        let (n1, n2) = (NormOracle::l1(6), NormOracle::linf(6));
        let m = quadratic_mean_combine(&n1, &n2, a1, a2).unwrap();
        let lhs = q_functional_raw(&m, &x, &y);
        let rhs = a1 * q_functional_raw(&n1, &x, &y) + a2 * q_functional_raw(&n2, &x, &y);
        prop_assert!((lhs - rhs).abs() <= 1e-11 * (1.0 + rhs.abs()));
    }

    #[test]
    fn hilbert_q_matches_l2(x in vec_strategy(4), y in vec_strategy(4)) {
        let q = q_functional(&NormOracle::l2(4), &x, &y);
        prop_assert!((q - hilbert_q_oracle(&x, &y)).abs() <= 1e-11);
    }

    #[test]
    fn gauge_reproduces_norm(x in vec_strategy(3)) {
        for norm in [NormOracle::l1(3), NormOracle::l2(3), NormOracle::linf(3)] {
            let g = norm_ball_gauge(&norm, &x, 1e-12).unwrap();
            prop_assert!((g - norm.eval(&x)).abs() <= 1e-10);
        }
    }
}

#[test]
fn q_identities_on_seeded_pairs() {
    let mut rng = seeded_rng(11, 0);
    let l2 = NormOracle::l2(16);
    let m = quadratic_mean_combine(&NormOracle::l2(16), &NormOracle::linf(16), 0.7, 1.3).unwrap();
    for _ in 0..2000 {
        let x = uniform_cube(&mut rng, 16);
        let y = uniform_cube(&mut rng, 16);
        let lin = 0.7 * q_functional_raw(&l2, &x, &y) + 1.3 * q_functional_raw(&NormOracle::linf(16), &x, &y);
        assert!((q_functional_raw(&m, &x, &y) - lin).abs() <= 1e-12);
        assert!((q_functional_raw(&l2, &x, &y) - hilbert_q_oracle(&x, &y)).abs() <= 1e-12);
    }
}

#[test]
fn membership_gauge_against_ray_scan() {
    let x = CoordVector::from_values(vec![0.5, 0.25]);
    let member = |v: &CoordVector| v.norm_linf() <= 1.0;
    let bracket = GaugeBracket::new(Reference::LInf, 1.0, 1.0).unwrap();
    let g = gauge_from_membership(member, &x, bracket, 1e-12).unwrap();
    let scan = gauge_by_ray_scan(member, &x, 20_000, 2.0).unwrap();
    assert_abs_diff_eq!(g, 0.5, epsilon = 1e-12);
    assert!((g - scan.value).abs() <= scan.error_bound);
}

#[test]
fn combined_ball_gauge_against_ray_scan() {
    let m = quadratic_mean_combine(&NormOracle::l2(2), &NormOracle::linf(2), 1.0, 1.0).unwrap();
    let x = CoordVector::from_values(vec![1.0, 1.0]);
    assert_abs_diff_eq!(m.eval(&x), 3f64.sqrt(), epsilon = 1e-15);
    let scan = gauge_by_ray_scan(|v| m.ball_contains(v), &x, 40_000, 4.0).unwrap();
    assert!((scan.value - 3f64.sqrt()).abs() <= scan.error_bound);
}

#[test]
fn dual_bounds_match_sphere_scans() {
    let cfg = ToleranceConfig {
        optimizer_budget: 2000,
        ..Default::default()
    };
    let phis = [
        CoordFunctional::from_values(vec![1.0, 1.0]),
        CoordFunctional::from_values(vec![1.0, -1.0, 1.0]),
        CoordFunctional::from_values(vec![0.3, 2.0, -0.7]),
    ];
    for phi in &phis {
        let d = phi.dim();
        for norm in [NormOracle::l1(d), NormOracle::l2(d), NormOracle::linf(d)] {
            let b = dual_norm_bounds(&norm, phi, d, &cfg, None).unwrap();
            let grid = ScanGrid::covering(&norm, if d == 2 { 1025 } else { 257 }).unwrap();
            let s = dual_by_sphere_scan(&norm, phi, &grid).unwrap();
            assert!(b.lower <= b.upper);
            assert!(
                (b.lower - s.value).abs() <= 1e-3,
                "{} {phi:?}: ascent {} scan {}",
                norm.label(),
                b.lower,
                s.value
            );
        }
    }
}

#[test]
fn dual_examples() {
    let cfg = ToleranceConfig::default();
    let b = dual_norm_bounds(&NormOracle::linf(2), &CoordFunctional::from_values(vec![1.0, 1.0]), 2, &cfg, Some(2.0)).unwrap();
    assert_abs_diff_eq!(b.lower, 2.0, epsilon = 1e-9);
    let b = dual_norm_bounds(&NormOracle::l1(3), &CoordFunctional::from_values(vec![1.0, -1.0, 1.0]), 3, &cfg, Some(1.0)).unwrap();
    assert_abs_diff_eq!(b.lower, 1.0, epsilon = 1e-9);
    let bad = dual_norm_bounds(&NormOracle::l2(2), &CoordFunctional::from_values(vec![3.0, 4.0]), 2, &cfg, Some(1.0));
    assert!(matches!(bad, Err(Error::InvariantViolation(_))));
}

#[test]
fn flat_face_midpoint() {
    let cfg = ToleranceConfig::default();
    let est = midpoint_sup_probe(&NormOracle::linf(2), 1.0, &ProbeConstraint::None, 2, &cfg).unwrap();
    assert!((est.value - 1.0).abs() <= 2e-3);
}
