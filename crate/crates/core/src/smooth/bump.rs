//! Smooth convex bump `φ` vanishing on `[0, a]` with `φ(1) = 1`.

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::numeric::integrate;

const QUAD_TOL: f64 = 1e-14;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `Φ(v) = ∫_0^v exp(-1/s) ds` by adaptive quadrature.
pub fn bump_profile_quadrature(v: f64) -> f64 {
    if v <= 0.0 {
        return 0.0;
    }
    integrate(|s| if s > 0.0 { (-1.0 / s).exp() } else { 0.0 }, 0.0, v, QUAD_TOL)
}

/// `Φ(v)` in closed form, `v e^{-1/v} - E1(1/v)`.
///
/// For `v <= 1` this is evaluated as `e^{-x} (1/x - e^x E1(x))` with
/// `x = 1/v` and `e^x E1(x)` from its continued fraction, which avoids
/// forming two nearly equal tiny numbers.
pub fn bump_profile_closed(v: f64) -> f64 {
    if v <= 0.0 {
        return 0.0;
    }
    let x = 1.0 / v;
    if x >= 1.0 {
        let ex = (-x).exp();
        if ex == 0.0 {
            return 0.0;
        }
        // Modified Lentz evaluation of e^x E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- ...))).
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..200 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        ex * (1.0 / x - h)
    } else {
        // Power series E1(x) = -γ - ln x - Σ (-x)^k / (k k!).
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 1..60 {
            term *= -x / k as f64;
            let add = term / k as f64;
            sum += add;
            if add.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        let e1 = -EULER_GAMMA - x.ln() - sum;
        v * (-x).exp() - e1
    }
}

/// `φ(t) = Φ((t - a)/(1 - a)) / Φ(1)` with `a = 1/(1+η)`.
///
/// The profile is rescaled to the window `[a, 1]` so that it stays
/// representable when `1 - a` is tiny.
#[derive(Debug, Clone, Serialize)]
pub struct BumpFunction {
    pub eta: f64,
    pub a: f64,
    /// `Φ(1)`, computed once by quadrature.
    pub norm_const: f64,
}

impl BumpFunction {
    pub fn new(eta: f64) -> Result<Self> {
        if !(eta > 0.0 && eta.is_finite()) {
            return Err(invalid(format!("bump needs eta > 0, got {eta}")));
        }
        Ok(Self {
            eta,
            a: 1.0 / (1.0 + eta),
            norm_const: bump_profile_quadrature(1.0),
        })
    }

    fn scaled(&self, t: f64) -> f64 {
        (t - self.a) / (1.0 - self.a)
    }

    fn derivative(&self, v: f64) -> f64 {
        (-1.0 / v).exp() / ((1.0 - self.a) * self.norm_const)
    }

    /// `(φ(t), φ'(t))` with `φ` integrated by adaptive quadrature.
    pub fn eval(&self, t: f64) -> Result<(f64, f64)> {
        if t < 0.0 {
            return Err(invalid(format!("bump argument must be nonnegative, got {t}")));
        }
        if t <= self.a {
            return Ok((0.0, 0.0));
        }
        let v = self.scaled(t);
        Ok((bump_profile_quadrature(v) / self.norm_const, self.derivative(v)))
    }

    /// `φ(t)` from the closed-form profile; same function as [`Self::eval`].
    pub fn value_fast(&self, t: f64) -> f64 {
        if t <= self.a {
            return 0.0;
        }
        bump_profile_closed(self.scaled(t)) / self.norm_const
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn profile_forms_agree() {
        assert_abs_diff_eq!(bump_profile_quadrature(1.0), 0.148_495_506_775_922, epsilon = 1e-12);
        for k in 1..=40 {
            let v = k as f64 * 0.05;
            assert_abs_diff_eq!(bump_profile_closed(v), bump_profile_quadrature(v), epsilon = 1e-13);
        }
    }

    #[test]
    fn bump_examples() {
        let b = BumpFunction::new(0.1).unwrap();
        assert_eq!(b.eval(0.5).unwrap(), (0.0, 0.0));
        assert_eq!(b.eval(b.a).unwrap(), (0.0, 0.0));
        let (v, d) = b.eval(1.0).unwrap();
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(d, (-1.0f64).exp() / ((1.0 - b.a) * b.norm_const), epsilon = 1e-12);
        assert!(b.eval(1.01).unwrap().0 > 1.0);
        assert!(b.eval(-0.1).is_err());
        assert!(BumpFunction::new(0.0).is_err());
    }

    #[test]
    fn bump_is_convex_and_increasing() {
        let b = BumpFunction::new(0.05).unwrap();
        let grid: Vec<f64> = (0..=60).map(|k| 0.9 + k as f64 * 0.0025).collect();
        for w in grid.windows(2) {
            let (s, t) = (w[0], w[1]);
            let (fs, ds) = b.eval(s).unwrap();
            let (ft, dt) = b.eval(t).unwrap();
            let (fm, _) = b.eval(0.5 * (s + t)).unwrap();
            assert!(fm <= 0.5 * (fs + ft) + 1e-14);
            assert!(ft >= fs && dt >= ds);
            if s > b.a {
                assert!(ft > fs);
            }
        }
    }
}
