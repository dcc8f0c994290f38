use std::sync::Arc;

use proptest::prelude::*;
use renorm_core::smooth::*;
use renorm_core::*;

fn quarter(depth: usize) -> ParamSchedule {
    build_schedule(0.25, depth).unwrap()
}

#[test]
fn schedule_reference_values() {
    let s = quarter(8);
    assert_eq!(s.w(2), 1.1);
    assert_eq!(s.h(2), 2.75);
    let audit = audit_schedule(&s);
    assert!(audit.iter().all(|e| e.pass));
    assert_eq!(FAMILIES.len(), 8);
    assert!(build_schedule(0.3, 8).is_err());
    assert!(build_schedule(0.25, 1).is_err());
}

#[test]
fn polyhedral_audits() {
    let s = quarter(6);
    let cfg = ToleranceConfig::default();
    for n in 2..=6 {
        for a in [
            polyhedral_sandwich_audit(&s, n, 2000, &cfg).unwrap(),
            list_recursion_audit(&s, n, 500, &cfg).unwrap(),
        ] {
            assert!(a.pass(), "{a:?}");
        }
    }
}

#[test]
fn smooth_audits() {
    let s = quarter(6);
    let l = LevelSetNorm::new(&s).unwrap();
    let cfg = ToleranceConfig::default();
    for n in 2..=6 {
        for a in [
            smoothing_sandwich_audit(&l, n, 2000, &cfg).unwrap(),
            property_ii_audit(&l, n, 1000, &cfg).unwrap(),
            property_iii_audit(&l, n, 1000, &cfg).unwrap(),
            gradient_audit(&l, n, 50, &cfg).unwrap(),
        ] {
            assert!(a.pass(), "{a:?}");
        }
    }
}

#[test]
fn dual_witnesses() {
    let s = quarter(6);
    let l = LevelSetNorm::new(&s).unwrap();
    let cfg = ToleranceConfig {
        optimizer_budget: 200,
        restarts: 1,
        ..Default::default()
    };
    let r = dual_witness_report(&l, 6, &cfg).unwrap();
    assert!(r.all_pass(), "{:?}", r.failures);
    assert_eq!(r.g[0], 0.0);
    assert_eq!(r.rows[0].z.len(), 2);
    assert!((r.rows[0].z[0] - 0.7).abs() < 1e-14 && r.rows[0].z[1] == 1.0);
    assert!(r.dual_f.upper == 1.0 && r.dual_f.lower <= 1.0 + 1e-12);
    assert!(r.mid_lower >= r.mid_reference);
    for w in r.rows.windows(2) {
        assert!(w[1].mid_lower > w[0].mid_lower);
    }
    assert!(dual_witness_report(&l, 7, &cfg).is_err());
}

#[test]
fn final_norm_sandwich() {
    let s = quarter(5);
    let l = Arc::new(LevelSetNorm::new(&s).unwrap());
    let oracle = l.oracle();
    let mut rng = renorm_core::config::seeded_rng(2, 0);
    assert!(oracle.check_axioms(300, 1e-12, &mut rng).is_ok());
    for k in 1..=5 {
        let e = CoordVector::basis(5, k);
        let v = l.final_norm_eval(&e).unwrap();
        assert!((1.0..=16.0).contains(&v));
    }
    assert!(l.final_norm_eval(&CoordVector::basis(6, 6)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn final_norm_bounds(v in prop::collection::vec(-1.0f64..1.0, 5)) {
        let l = LevelSetNorm::new(&quarter(5)).unwrap();
        let x = CoordVector::from_values(v);
        let r = x.norm_linf();
        let g = l.final_norm_eval(&x).unwrap();
        prop_assert!(g >= r * (1.0 - 1e-12) && g <= 16.0 * r);
        let padded = x.padded(5).unwrap();
        prop_assert_eq!(l.final_norm_eval(&padded).unwrap(), g);
    }

    #[test]
    fn aggregate_sandwich(v in prop::collection::vec(-1.0f64..1.0, 4)) {
        let s = quarter(4);
        let list = functional_list(&s, PolyKind::One, 4).unwrap();
        let agg = SmoothAggNorm::new(&list.functionals, 0.01).unwrap();
        let x = CoordVector::from_values(v);
        let m = agg.max_eval(&x);
        prop_assert!((m - list.eval(&x)).abs() <= 1e-15);
        prop_assert!(agg.eval(&x) >= m * (1.0 - 1e-14) && agg.eval(&x) <= 1.01 * m * (1.0 + 1e-14));
    }
}
