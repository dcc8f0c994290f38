//! The polyhedral norms `⟦·⟧_{1,n}` and `⟦·⟧_{∞,n}` on `ℓ∞^n`.

use serde::{Deserialize, Serialize};

use super::schedule::ParamSchedule;
use crate::coord::{CoordFunctional, CoordVector};
use crate::error::{invalid, Error, Result};

/// Functional lists grow like `3^n`; deeper lists are refused.
pub const DEPTH_CAP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolyKind {
    /// `⟦x⟧_{1,n} = ⟦P_{n-1} x⟧_{∞,n-1} / w_n + |x_n| / h_n`.
    One,
    /// `⟦x⟧_{∞,n} = max{⟦x⟧_{1,n}, ⟦P_{n-1} x⟧_{∞,n-1}, |x_n|}`.
    Inf,
}

fn check_depth(p: &ParamSchedule, kind: PolyKind, n: usize) -> Result<()> {
    let lo = match kind {
        PolyKind::One => 2,
        PolyKind::Inf => 1,
    };
    if n < lo || n > p.depth() {
        return Err(Error::IndexOutOfRange {
            index: n,
            max: p.depth(),
        });
    }
    Ok(())
}

/// Both polyhedral norms at every depth `1..=n`: `(one, inf)` with
/// `one[0]` unused.
pub(crate) fn polyhedral_levels(p: &ParamSchedule, n: usize, x: &CoordVector) -> (Vec<f64>, Vec<f64>) {
    let mut one = vec![f64::NAN; n];
    let mut inf = vec![0.0; n];
    inf[0] = x.get(1).abs();
    for k in 2..=n {
        let xk = x.get(k).abs();
        one[k - 1] = inf[k - 2] / p.w(k) + xk / p.h(k);
        inf[k - 1] = one[k - 1].max(inf[k - 2]).max(xk);
    }
    (one, inf)
}

/// Recursive evaluation of `⟦P_n x⟧_{kind,n}`.
pub fn polyhedral_eval(p: &ParamSchedule, kind: PolyKind, n: usize, x: &CoordVector) -> Result<f64> {
    check_depth(p, kind, n)?;
    let (one, inf) = polyhedral_levels(p, n, x);
    Ok(match kind {
        PolyKind::One => one[n - 1],
        PolyKind::Inf => inf[n - 1],
    })
}

/// A polyhedral norm stored as the symmetric list of functionals whose
/// absolute values it maximises.
#[derive(Debug, Clone, Serialize)]
pub struct PolyhedralNorm {
    pub depth: usize,
    pub kind: PolyKind,
    pub functionals: Vec<CoordFunctional>,
}

impl PolyhedralNorm {
    pub fn eval(&self, x: &CoordVector) -> f64 {
        self.functionals.iter().fold(0.0, |m, u| m.max(u.pair(x).abs()))
    }

    pub fn len(&self) -> usize {
        self.functionals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functionals.is_empty()
    }
}

/// The generating functionals, of dimension `n`.
///
/// * inf at depth 1: `{e1*, -e1*}`;
/// * one at depth `n`: `u / w_n ± e_n* / h_n` for `u` in the inf list at `n-1`;
/// * inf at depth `n`: one list, then the inf list at `n-1`, then `±e_n*`.
///
/// Sizes satisfy `V_n = 3 V_{n-1} + 2`, i.e. `V_n = 3^n - 1`.
pub fn functional_list(p: &ParamSchedule, kind: PolyKind, n: usize) -> Result<PolyhedralNorm> {
    check_depth(p, kind, n)?;
    if n > DEPTH_CAP {
        return Err(Error::DepthCap { depth: n, cap: DEPTH_CAP });
    }
    let mut inf: Vec<Vec<f64>> = vec![vec![1.0], vec![-1.0]];
    let mut one: Vec<Vec<f64>> = Vec::new();
    for k in 2..=n {
        let (w, h) = (p.w(k), p.h(k));
        one = Vec::with_capacity(2 * inf.len());
        for u in &inf {
            for s in [1.0, -1.0] {
                let mut v: Vec<f64> = u.iter().map(|a| a / w).collect();
                v.push(s / h);
                one.push(v);
            }
        }
        let mut next = one.clone();
        next.reserve(inf.len() + 2);
        for u in &inf {
            let mut v = u.clone();
            v.push(0.0);
            next.push(v);
        }
        let mut ek = vec![0.0; k];
        ek[k - 1] = 1.0;
        next.push(ek.clone());
        ek[k - 1] = -1.0;
        next.push(ek);
        inf = next;
    }
    let rows = match kind {
        PolyKind::One => one,
        PolyKind::Inf => inf,
    };
    if rows.is_empty() {
        return Err(invalid("empty functional list"));
    }
    Ok(PolyhedralNorm {
        depth: n,
        kind,
        functionals: rows.into_iter().map(CoordFunctional::from_values).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::seeded_rng;
    use crate::smooth::schedule::build_schedule;
    use crate::sampling::uniform_cube;

    #[test]
    fn base_and_counts() {
        let p = build_schedule(0.25, 6).unwrap();
        let l1 = functional_list(&p, PolyKind::Inf, 1).unwrap();
        assert_eq!(l1.len(), 2);
        let mut v = 2;
        for n in 2..=6 {
            v = 3 * v + 2;
            assert_eq!(functional_list(&p, PolyKind::Inf, n).unwrap().len(), v);
            assert_eq!(functional_list(&p, PolyKind::One, n).unwrap().len(), 2 * (v - 2) / 3);
        }
        assert!(functional_list(&p, PolyKind::One, 1).is_err());
    }

    #[test]
    fn witness_z2_has_unit_norm() {
        let p = build_schedule(0.25, 8).unwrap();
        let z2 = CoordVector::from_values(vec![0.7, 1.0]);
        assert!((polyhedral_eval(&p, PolyKind::One, 2, &z2).unwrap() - 1.0).abs() < 1e-15);
        for n in 1..=8 {
            let e = CoordVector::basis(8, n);
            assert_eq!(polyhedral_eval(&p, PolyKind::Inf, n, &e).unwrap(), 1.0);
        }
    }

    #[test]
    fn list_matches_recursion() {
        let p = build_schedule(0.25, 5).unwrap();
        let mut rng = seeded_rng(5, 0);
        for n in 1..=5 {
            let list = functional_list(&p, PolyKind::Inf, n).unwrap();
            for _ in 0..200 {
                let x = uniform_cube(&mut rng, n);
                let r = polyhedral_eval(&p, PolyKind::Inf, n, &x).unwrap();
                assert!((list.eval(&x) - r).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn depth_cap_enforced() {
        let p = build_schedule(0.25, 11).unwrap();
        assert!(matches!(
            functional_list(&p, PolyKind::Inf, 11),
            Err(Error::DepthCap { .. })
        ));
    }
}
