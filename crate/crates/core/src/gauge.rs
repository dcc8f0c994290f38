//! Minkowski gauges from membership oracles.

use crate::coord::CoordVector;
use crate::error::{Error, Result};
use crate::norm::{NormOracle, Reference};
use crate::numeric::bisect_threshold;

/// Radii of reference balls sandwiching a convex body:
/// `inner * B_ref ⊂ K ⊂ outer * B_ref`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeBracket {
    pub reference: Reference,
    pub inner_radius: f64,
    pub outer_radius: f64,
}

impl GaugeBracket {
    pub fn new(reference: Reference, inner_radius: f64, outer_radius: f64) -> Result<Self> {
        if !(inner_radius > 0.0 && inner_radius <= outer_radius && outer_radius.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "gauge bracket needs 0 < inner <= outer < inf, got ({inner_radius}, {outer_radius})"
            )));
        }
        Ok(Self {
            reference,
            inner_radius,
            outer_radius,
        })
    }

    /// The bracket of a norm's unit ball implied by its equivalence constants.
    pub fn of_norm(norm: &NormOracle) -> Self {
        let (lo, hi) = norm.constants();
        Self {
            reference: norm.reference(),
            inner_radius: 1.0 / hi,
            outer_radius: 1.0 / lo,
        }
    }
}

/// Gauge `inf { t > 0 : x / t ∈ K }` of a closed bounded convex body `K`
/// with `0` in its interior, by bisection on `t`.
///
/// Membership along a ray is monotone, so the search runs over
/// `[|x|_ref / outer, |x|_ref / inner]` and stops when the bracket is
/// narrower than `tol`.
pub fn gauge_from_membership<M>(
    member: M,
    x: &CoordVector,
    bracket: GaugeBracket,
    tol: f64,
) -> Result<f64>
where
    M: Fn(&CoordVector) -> bool,
{
    let r = bracket.reference.eval(x);
    if r == 0.0 {
        return Ok(0.0);
    }
    // Widened by a few ulps so a bracket that is tight (inner = outer)
    // survives rounding in `x / t`.
    let t_lo = r / bracket.outer_radius * (1.0 - 1e-12);
    let t_hi = r / bracket.inner_radius * (1.0 + 1e-12);
    let inside = |t: f64| member(&x.scaled(1.0 / t));
    if !inside(t_hi) {
        return Err(Error::InvalidSet(format!(
            "point at the inner bracket radius is not a member (t = {t_hi})"
        )));
    }
    if inside(t_lo) {
        // The body reaches the outer radius along this ray; it must not poke out.
        if inside(t_lo * (1.0 - 1e-9)) {
            return Err(Error::InvalidSet(format!(
                "body extends beyond the outer bracket radius along the ray (t = {t_lo})"
            )));
        }
        return Ok(t_lo);
    }
    let (lo, hi) = bisect_threshold(inside, t_lo, t_hi, tol);
    Ok(0.5 * (lo + hi))
}

/// Gauge of a norm's own unit ball; reproduces the norm up to `tol`.
pub fn norm_ball_gauge(norm: &NormOracle, x: &CoordVector, tol: f64) -> Result<f64> {
    gauge_from_membership(|y| norm.ball_contains(y), x, GaugeBracket::of_norm(norm), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn euclidean_ball_examples() {
        let l2 = NormOracle::l2(3);
        let e1 = CoordVector::basis(3, 1);
        assert_abs_diff_eq!(norm_ball_gauge(&l2, &e1, 1e-10).unwrap(), 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(
            norm_ball_gauge(&l2, &e1.scaled(3.0), 1e-10).unwrap(),
            3.0,
            epsilon = 1e-10
        );
        assert_eq!(norm_ball_gauge(&l2, &CoordVector::zeros(3), 1e-10).unwrap(), 0.0);
    }

    #[test]
    fn sup_ball_against_euclidean_bracket() {
        let linf = NormOracle::linf(2);
        let bracket = GaugeBracket::new(Reference::L2, 1.0, 2f64.sqrt()).unwrap();
        let x = CoordVector::from_values(vec![0.5, 0.25]);
        let g = gauge_from_membership(|y| linf.ball_contains(y), &x, bracket, 1e-10).unwrap();
        assert_abs_diff_eq!(g, 0.5, epsilon = 1e-10);
        // Diagonal rays touch the outer radius exactly.
        let d = CoordVector::from_values(vec![1.0, 1.0]);
        let g = gauge_from_membership(|y| linf.ball_contains(y), &d, bracket, 1e-10).unwrap();
        assert_abs_diff_eq!(g, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn bracket_failures_are_reported() {
        let l2 = NormOracle::l2(2);
        let x = CoordVector::basis(2, 1);
        // Claimed inner radius too large: the body does not contain it.
        let too_big = GaugeBracket::new(Reference::L2, 2.0, 3.0).unwrap();
        assert!(matches!(
            gauge_from_membership(|y| l2.ball_contains(y), &x, too_big, 1e-10),
            Err(Error::InvalidSet(_))
        ));
        // Claimed outer radius too small.
        let too_small = GaugeBracket::new(Reference::L2, 0.25, 0.5).unwrap();
        assert!(matches!(
            gauge_from_membership(|y| l2.ball_contains(y), &x, too_small, 1e-10),
            Err(Error::InvalidSet(_))
        ));
        assert!(GaugeBracket::new(Reference::L2, 0.0, 1.0).is_err());
    }
}
