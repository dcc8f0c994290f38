//! The single-tuple norm `⟦·⟧_{α,δ,C}` on an `ℓ2` truncation.
//!
//! The unit ball is the Euclidean ball cut by a cylinder in the direction
//! `h0` over the ball of `((1-δ)² ⟦·⟧²_B̂ + ε ‖·‖²)^{1/2}` on `ker g0`, where
//! `B̂ = P(B) ∩ {|<f0, ·>| <= (1-δ)²}` and `P x = x - <g0, x> h0`.

use serde::Serialize;

use crate::coord::{CoordFunctional, CoordVector};
use crate::error::{invalid, Error, Result};
use crate::gauge::{gauge_from_membership, GaugeBracket};
use crate::norm::{NormOracle, Reference};
use crate::numeric::golden_section_min;

const PAIRING_TOL: f64 = 1e-14;

/// `ε_{δ,C} = (1 - (1-δ)²) / (1 + C²)²`.
pub fn slice_epsilon(delta: f64, c: f64) -> f64 {
    let s = 1.0 - delta;
    (1.0 - s * s) / (1.0 + c * c).powi(2)
}

/// Data `(x0, h0, f0, g0)` with the rotundity parameters `δ` and `C`.
#[derive(Debug, Clone, Serialize)]
pub struct AlphaTuple {
    x0: CoordVector,
    h0: CoordVector,
    f0: CoordFunctional,
    g0: CoordFunctional,
    delta: f64,
    c: f64,
    epsilon: f64,
    h0_sq: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SliceNormConstants {
    pub epsilon: f64,
    /// `1 / ⟦x0⟧_{α,δ,C}`.
    pub lambda0: f64,
}

impl AlphaTuple {
    /// Validates every tuple invariant; the reference norm is `ℓ2`, which is
    /// self-dual, so dual norms of `f0`, `g0` are Euclidean lengths.
    pub fn new(
        x0: CoordVector,
        h0: CoordVector,
        f0: CoordFunctional,
        g0: CoordFunctional,
        delta: f64,
        c: f64,
    ) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(invalid(format!("delta must lie in (0, 1), got {delta}")));
        }
        if (1.0 - delta).powi(4) <= 0.5 {
            return Err(invalid(format!("(1-delta)^4 = {} must exceed 1/2", (1.0 - delta).powi(4))));
        }
        if !(c >= 1.0 && c.is_finite()) {
            return Err(invalid(format!("C must be at least 1, got {c}")));
        }
        let check = |ok: bool, what: String| if ok { Ok(()) } else { Err(invalid(what)) };
        check(f0.pair(&h0).abs() <= PAIRING_TOL, format!("<f0, h0> = {} must vanish", f0.pair(&h0)))?;
        check((g0.pair(&h0) - 1.0).abs() <= PAIRING_TOL, format!("<g0, h0> = {} must be 1", g0.pair(&h0)))?;
        check(f0.pair(&x0) >= 1.0 - delta - PAIRING_TOL, format!("<f0, x0> = {} below 1 - delta", f0.pair(&x0)))?;
        check((x0.norm_l2() - 1.0).abs() <= PAIRING_TOL, format!("|x0| = {} must be 1", x0.norm_l2()))?;
        let tol = 1.0 + PAIRING_TOL;
        for (name, v) in [("|h0|", h0.norm_l2()), ("|g0|*", g0.norm_l2())] {
            check(v * tol >= 1.0 && v <= c * tol, format!("{name} = {v} outside [1, C = {c}]"))?;
        }
        check(f0.norm_l2() <= c * tol, format!("|f0|* = {} exceeds C = {c}", f0.norm_l2()))?;
        let h0_sq = h0.dot(&h0);
        Ok(Self {
            x0,
            h0,
            f0,
            g0,
            delta,
            c,
            epsilon: slice_epsilon(delta, c),
            h0_sq,
        })
    }

    pub fn x0(&self) -> &CoordVector {
        &self.x0
    }
    pub fn h0(&self) -> &CoordVector {
        &self.h0
    }
    pub fn f0(&self) -> &CoordFunctional {
        &self.f0
    }
    pub fn g0(&self) -> &CoordFunctional {
        &self.g0
    }
    pub fn delta(&self) -> f64 {
        self.delta
    }
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn constants(&self) -> SliceNormConstants {
        SliceNormConstants {
            epsilon: self.epsilon,
            lambda0: 1.0 / slice_norm_eval(self, &self.x0),
        }
    }

    fn slab(&self) -> f64 {
        (1.0 - self.delta).powi(2)
    }
}

/// `P_α x = x - <g0, x> h0`, the projection onto `ker g0` along `h0`.
pub fn project_alpha(alpha: &AlphaTuple, x: &CoordVector) -> CoordVector {
    x.add_scaled(-alpha.g0.pair(x), &alpha.h0)
}

fn check_kernel(alpha: &AlphaTuple, y: &CoordVector) -> Result<()> {
    let g = alpha.g0.pair(y);
    if g.abs() > 1e-12 * y.norm_l2().max(1.0) {
        return Err(invalid(format!("point is not in ker g0: <g0, y> = {g}")));
    }
    Ok(())
}

/// Gauge of `B̂` at `y ∈ ker g0` by bisection on ray membership.
///
/// For `y ∈ ker g0`, `y ∈ P(B)` iff `min_t ‖y + t h0‖ <= 1`; that convex
/// line minimum is found by golden-section search at `tol / 10`.
pub fn bhat_gauge(alpha: &AlphaTuple, y: &CoordVector, tol: f64) -> Result<f64> {
    check_kernel(alpha, y)?;
    if y.is_zero() {
        return Ok(0.0);
    }
    let slab = alpha.slab();
    let h_len = alpha.h0_sq.sqrt();
    let member = |z: &CoordVector| {
        if alpha.f0.pair(z).abs() > slab {
            return false;
        }
        let reach = (1.0 + z.norm_l2()) / h_len;
        let (_, m) = golden_section_min(|t| z.add_scaled(t, &alpha.h0).norm_l2(), -reach, reach, tol / 10.0);
        m <= 1.0
    };
    // slab * (B ∩ ker g0) ⊂ B̂ ⊂ P(B) ⊂ (1 + C²) B.
    let bracket = GaugeBracket::new(Reference::L2, slab, 1.0 + alpha.c * alpha.c)?;
    gauge_from_membership(member, y, bracket, tol)
}

/// Closed form of [`bhat_gauge`] in the Euclidean model: the gauge of an
/// intersection is the max of the gauges, and the quotient norm modulo `h0`
/// is the length of the component orthogonal to `h0`.
pub fn bhat_closed_form(alpha: &AlphaTuple, y: &CoordVector) -> f64 {
    let along = y.dot(&alpha.h0);
    let quotient = (y.dot(y) - along * along / alpha.h0_sq).max(0.0).sqrt();
    (alpha.f0.pair(y).abs() / alpha.slab()).max(quotient)
}

fn combine(alpha: &AlphaTuple, x: &CoordVector, px: &CoordVector, bhat: f64) -> f64 {
    let s = 1.0 - alpha.delta;
    let cyl = (s * s * bhat * bhat + alpha.epsilon * px.dot(px)).sqrt();
    x.norm_l2().max(cyl)
}

/// `⟦x⟧_{α,δ,C} = max{‖x‖, ((1-δ)² ⟦P x⟧²_B̂ + ε ‖P x‖²)^{1/2}}`, using the
/// closed-form `B̂` gauge.
pub fn slice_norm_eval(alpha: &AlphaTuple, x: &CoordVector) -> f64 {
    let px = project_alpha(alpha, x);
    combine(alpha, x, &px, bhat_closed_form(alpha, &px))
}

/// [`slice_norm_eval`] as an oracle with constants `(1, 1/(1-δ)²)` against `ℓ2`.
pub fn slice_norm_oracle(alpha: &AlphaTuple) -> NormOracle {
    let a = alpha.clone();
    NormOracle::new("slice", alpha.x0.dim(), Reference::L2, (1.0, 1.0 / alpha.slab()), move |x| {
        slice_norm_eval(&a, x)
    })
    .expect("valid constants")
}

/// Same norm with the `B̂` gauge computed from membership by bisection.
pub fn slice_norm_eval_by_gauge(alpha: &AlphaTuple, x: &CoordVector, tol: f64) -> Result<f64> {
    let px = project_alpha(alpha, x);
    let b = bhat_gauge(alpha, &px, tol)?;
    Ok(combine(alpha, x, &px, b))
}

/// Rejects a point whose support exceeds the model truncation.
pub(crate) fn check_support(x: &CoordVector, bound: usize) -> Result<()> {
    match x.support_max() {
        Some(s) if s > bound => Err(Error::SupportOutOfBounds { index: s, bound }),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn model_a(n: usize, dim: usize) -> AlphaTuple {
        AlphaTuple::new(
            CoordVector::basis(dim, n + 1),
            CoordVector::basis(dim, 1),
            CoordFunctional::basis(dim, n + 1),
            CoordFunctional::basis(dim, 1),
            0.1,
            1.1,
        )
        .unwrap()
    }

    #[test]
    fn epsilon_closed_form() {
        assert_abs_diff_eq!(slice_epsilon(0.1, 1.1), 0.19 / 4.8841, epsilon = 1e-15);
        assert_abs_diff_eq!(slice_epsilon(0.1, 1.1), 0.0389017, epsilon = 1e-7);
    }

    #[test]
    fn projection_examples() {
        let a = model_a(2, 5);
        let x = CoordVector::from_values(vec![1.0, 0.0, 2.0, 0.0, 0.0]);
        assert_eq!(project_alpha(&a, &x), CoordVector::basis(5, 3).scaled(2.0));
        assert!(project_alpha(&a, a.h0()).is_zero());
    }

    #[test]
    fn bhat_examples() {
        let a = model_a(2, 5);
        let xn = CoordVector::basis(5, 3);
        let g = bhat_gauge(&a, &xn, 1e-10).unwrap();
        assert_abs_diff_eq!(g, 1.0 / 0.81, epsilon = 1e-9);
        assert_abs_diff_eq!(bhat_closed_form(&a, &xn), 1.0 / 0.81, epsilon = 1e-15);
        let flat = CoordVector::basis(5, 4);
        assert_abs_diff_eq!(bhat_gauge(&a, &flat, 1e-10).unwrap(), 1.0, epsilon = 1e-9);
        assert_eq!(bhat_gauge(&a, &CoordVector::zeros(5), 1e-10).unwrap(), 0.0);
        assert!(bhat_gauge(&a, &CoordVector::basis(5, 1), 1e-10).is_err());
    }

    #[test]
    fn slice_norm_at_x0_and_lemma_bounds() {
        let a = model_a(4, 8);
        let v = slice_norm_eval(&a, a.x0());
        assert_abs_diff_eq!(v, (1.0 / 0.81 + slice_epsilon(0.1, 1.1)).sqrt(), epsilon = 1e-15);
        let k = a.constants();
        assert!(k.lambda0 >= 0.81 && k.lambda0 <= 1.0 / (1.0 + k.epsilon).sqrt());
        assert_abs_diff_eq!(k.lambda0, 0.886_147, epsilon = 1e-6);
        let by_gauge = slice_norm_eval_by_gauge(&a, a.x0(), 1e-12).unwrap();
        assert_abs_diff_eq!(by_gauge, v, epsilon = 1e-10);
    }

    #[test]
    fn segment_lies_on_sphere() {
        let a = model_a(1, 4);
        let l = a.constants().lambda0;
        for k in 0..=20 {
            let mu = (-1.0 + 0.1 * k as f64) * (1.0 - l) / a.c();
            let z = a.x0().scaled(l).add_scaled(mu, a.h0());
            assert_abs_diff_eq!(slice_norm_eval(&a, &z), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn invalid_tuples_rejected() {
        let e = |i| CoordVector::basis(4, i);
        let f = |i| CoordFunctional::basis(4, i);
        assert!(AlphaTuple::new(e(2), e(1), f(2), f(1), 0.3, 1.1).is_err());
        assert!(AlphaTuple::new(e(2), e(2), f(2), f(1), 0.1, 1.1).is_err());
        assert!(AlphaTuple::new(e(2), e(1), f(3), f(1), 0.1, 1.1).is_err());
        assert!(AlphaTuple::new(e(2), e(1).scaled(2.0), f(2), f(1).scaled(0.5), 0.1, 1.1).is_err());
        assert!(AlphaTuple::new(e(2), e(1), f(2), f(1), 0.1, 0.5).is_err());
    }
}
