//! Norms as evaluation oracles, the Q-functional and the two combinators
//! (weighted quadratic mean, finite maximum).

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::coord::CoordVector;
use crate::error::{invalid, violated, Result};
use crate::sampling::uniform_cube;

/// Ambient norm that equivalence constants are stated against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Reference {
    L1,
    L2,
    LInf,
}

impl Reference {
    pub fn eval(self, x: &CoordVector) -> f64 {
        match self {
            Reference::L1 => x.norm_l1(),
            Reference::L2 => x.norm_l2(),
            Reference::LInf => x.norm_linf(),
        }
    }

    fn inv_exponent(self) -> f64 {
        match self {
            Reference::L1 => 1.0,
            Reference::L2 => 0.5,
            Reference::LInf => 0.0,
        }
    }

    /// Constants `(lo, hi)` with `lo |x|_to <= |x|_self <= hi |x|_to` on `R^dim`.
    pub fn equivalence(self, to: Reference, dim: usize) -> (f64, f64) {
        let d = dim.max(1) as f64;
        let gap = self.inv_exponent() - to.inv_exponent();
        (d.powf(gap.min(0.0)), d.powf(gap.max(0.0)))
    }
}

pub type Evaluator = Arc<dyn Fn(&CoordVector) -> f64 + Send + Sync>;

/// An evaluatable norm on `R^dim` with declared equivalence constants
/// `lo * ref(x) <= eval(x) <= hi * ref(x)`.
#[derive(Clone)]
pub struct NormOracle {
    label: String,
    dim: usize,
    reference: Reference,
    lo: f64,
    hi: f64,
    eval: Evaluator,
}

impl fmt::Debug for NormOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NormOracle")
            .field("label", &self.label)
            .field("dim", &self.dim)
            .field("reference", &self.reference)
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .finish()
    }
}

impl NormOracle {
    pub fn new<F>(
        label: impl Into<String>,
        dim: usize,
        reference: Reference,
        (lo, hi): (f64, f64),
        eval: F,
    ) -> Result<Self>
    where
        F: Fn(&CoordVector) -> f64 + Send + Sync + 'static,
    {
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return Err(invalid(format!(
                "equivalence constants need 0 < lo <= hi < inf, got ({lo}, {hi})"
            )));
        }
        if dim == 0 {
            return Err(invalid("norm dimension must be positive"));
        }
        Ok(Self {
            label: label.into(),
            dim,
            reference,
            lo,
            hi,
            eval: Arc::new(eval),
        })
    }

    pub fn l1(dim: usize) -> Self {
        Self::new("l1", dim, Reference::L1, (1.0, 1.0), |x| x.norm_l1()).unwrap()
    }

    pub fn l2(dim: usize) -> Self {
        Self::new("l2", dim, Reference::L2, (1.0, 1.0), |x| x.norm_l2()).unwrap()
    }

    pub fn linf(dim: usize) -> Self {
        Self::new("linf", dim, Reference::LInf, (1.0, 1.0), |x| x.norm_linf()).unwrap()
    }

    #[inline]
    pub fn eval(&self, x: &CoordVector) -> f64 {
        (self.eval)(x)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn reference(&self) -> Reference {
        self.reference
    }

    pub fn reference_norm(&self, x: &CoordVector) -> f64 {
        self.reference.eval(x)
    }

    pub fn constants(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    /// Equivalence constants restated against another reference norm.
    pub fn constants_against(&self, to: Reference) -> (f64, f64) {
        let (elo, ehi) = self.reference.equivalence(to, self.dim);
        (self.lo * elo, self.hi * ehi)
    }

    pub fn ball_contains(&self, x: &CoordVector) -> bool {
        self.eval(x) <= 1.0
    }

    /// `c * self` for `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0) {
            return Err(invalid(format!("scale factor must be positive, got {c}")));
        }
        let inner = self.eval.clone();
        Self::new(
            format!("{c}*{}", self.label),
            self.dim,
            self.reference,
            (c * self.lo, c * self.hi),
            move |x| c * inner(x),
        )
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Spot-checks homogeneity, the triangle inequality and the declared
    /// equivalence constants on random points of the cube `[-1, 1]^dim`.
    pub fn check_axioms<R: Rng>(&self, samples: usize, tol: f64, rng: &mut R) -> Result<()> {
        for _ in 0..samples {
            let x = uniform_cube(rng, self.dim);
            let y = uniform_cube(rng, self.dim);
            let t: f64 = rng.random_range(-3.0..3.0);
            let nx = self.eval(&x);
            let scale = 1.0 + nx;
            if (self.eval(&x.scaled(t)) - t.abs() * nx).abs() > tol * scale * (1.0 + t.abs()) {
                return Err(violated(format!("{}: homogeneity fails at {x:?}", self.label)));
            }
            let ny = self.eval(&y);
            if self.eval(&(&x + &y)) > nx + ny + tol * (1.0 + nx + ny) {
                return Err(violated(format!("{}: triangle inequality fails", self.label)));
            }
            let r = self.reference_norm(&x);
            if nx < self.lo * r - tol * scale || nx > self.hi * r + tol * scale {
                return Err(violated(format!(
                    "{}: value {nx} outside [{}, {}] * ref {r}",
                    self.label, self.lo, self.hi
                )));
            }
        }
        Ok(())
    }
}

/// Negative values of Q above `-Q_CLAMP_TOL * (2|x|^2 + 2|y|^2)` are rounding
/// noise and are reported as zero.
pub const Q_CLAMP_TOL: f64 = 1e-12;

/// `2|x|^2 + 2|y|^2 - |x + y|^2` without clamping.
pub fn q_functional_raw(norm: &NormOracle, x: &CoordVector, y: &CoordVector) -> f64 {
    let a = norm.eval(x);
    let b = norm.eval(y);
    let c = norm.eval(&(x + y));
    2.0 * a * a + 2.0 * b * b - c * c
}

/// The Q-functional of a norm; vanishing sequences of Q characterise the
/// rotundity notions.
pub fn q_functional(norm: &NormOracle, x: &CoordVector, y: &CoordVector) -> f64 {
    let a = norm.eval(x);
    let b = norm.eval(y);
    let c = norm.eval(&(x + y));
    let base = 2.0 * a * a + 2.0 * b * b;
    let q = base - c * c;
    if q < 0.0 && q >= -Q_CLAMP_TOL * base.max(1.0) {
        0.0
    } else {
        q
    }
}

/// `(a1 n1^2 + a2 n2^2)^{1/2}`. Its Q-functional is `a1 Q1 + a2 Q2`.
pub fn quadratic_mean_combine(
    n1: &NormOracle,
    n2: &NormOracle,
    a1: f64,
    a2: f64,
) -> Result<NormOracle> {
    if !(a1 > 0.0 && a2 > 0.0) {
        return Err(invalid(format!(
            "quadratic mean weights must be positive, got ({a1}, {a2})"
        )));
    }
    if n1.dim != n2.dim {
        return Err(invalid(format!(
            "dimension mismatch {} vs {}",
            n1.dim, n2.dim
        )));
    }
    let (lo2, hi2) = n2.constants_against(n1.reference);
    let lo = (a1 * n1.lo * n1.lo + a2 * lo2 * lo2).sqrt();
    let hi = (a1 * n1.hi * n1.hi + a2 * hi2 * hi2).sqrt();
    let (e1, e2) = (n1.eval.clone(), n2.eval.clone());
    NormOracle::new(
        format!("qmean({a1}*{}^2 + {a2}*{}^2)", n1.label, n2.label),
        n1.dim,
        n1.reference,
        (lo, hi),
        move |x| {
            let u = e1(x);
            let v = e2(x);
            (a1 * u * u + a2 * v * v).sqrt()
        },
    )
}

/// Pointwise maximum of finitely many norms. The recorded constants are
/// `(max lo_i, max hi_i)` against the first norm's reference.
pub fn finite_max_combine(norms: &[NormOracle]) -> Result<NormOracle> {
    let first = norms
        .first()
        .ok_or_else(|| invalid("finite_max_combine needs at least one norm"))?;
    if norms.iter().any(|n| n.dim != first.dim) {
        return Err(invalid("finite_max_combine: dimension mismatch"));
    }
    let mut lo: f64 = 0.0;
    let mut hi: f64 = 0.0;
    for n in norms {
        let (l, h) = n.constants_against(first.reference);
        lo = lo.max(l);
        hi = hi.max(h);
    }
    let evals: Vec<Evaluator> = norms.iter().map(|n| n.eval.clone()).collect();
    let label = format!(
        "max{{{}}}",
        norms.iter().map(|n| n.label.as_str()).collect::<Vec<_>>().join(", ")
    );
    NormOracle::new(label, first.dim, first.reference, (lo, hi), move |x| {
        evals.iter().fold(0.0, |m, e| m.max(e(x)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::seeded_rng;
    use approx::assert_abs_diff_eq;

    fn v(xs: &[f64]) -> CoordVector {
        CoordVector::from_values(xs.to_vec())
    }

    #[test]
    fn q_examples_for_l2() {
        let l2 = NormOracle::l2(3);
        let e1 = CoordVector::basis(3, 1);
        let e2 = CoordVector::basis(3, 2);
        let x = v(&[0.3, -1.2, 2.0]);
        assert_eq!(q_functional(&l2, &x, &x), 0.0);
        assert_abs_diff_eq!(q_functional(&l2, &e1, &(-&e1)), 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q_functional(&l2, &e1, &e2), 2.0, epsilon = 1e-15);
    }

    #[test]
    fn quadratic_mean_examples() {
        let l2 = NormOracle::l2(2);
        let same = quadratic_mean_combine(&l2, &l2, 0.5, 0.5).unwrap();
        let mut rng = seeded_rng(1, 0);
        for _ in 0..100 {
            let x = uniform_cube(&mut rng, 2);
            assert_abs_diff_eq!(same.eval(&x), l2.eval(&x), epsilon = 1e-15);
        }
        let mixed = quadratic_mean_combine(&l2, &NormOracle::linf(2), 1.0, 1.0).unwrap();
        assert_abs_diff_eq!(mixed.eval(&v(&[1.0, 1.0])), 3f64.sqrt(), epsilon = 1e-15);
        mixed.check_axioms(500, 1e-12, &mut rng).unwrap();
    }

    #[test]
    fn quadratic_mean_rejects_nonpositive_weights() {
        let l2 = NormOracle::l2(2);
        assert!(quadratic_mean_combine(&l2, &l2, 0.0, 1.0).is_err());
        assert!(quadratic_mean_combine(&l2, &l2, 1.0, -1.0).is_err());
    }

    #[test]
    fn finite_max_examples() {
        let l2 = NormOracle::l2(2);
        let single = finite_max_combine(std::slice::from_ref(&l2)).unwrap();
        let x = v(&[0.6, -0.8]);
        assert_eq!(single.eval(&x), l2.eval(&x));
        let dominated = finite_max_combine(&[l2.clone(), l2.scaled(0.5).unwrap()]).unwrap();
        assert_eq!(dominated.eval(&x), l2.eval(&x));
        let m = finite_max_combine(&[NormOracle::l1(2), NormOracle::linf(2)]).unwrap();
        assert_abs_diff_eq!(m.eval(&v(&[1.0, 0.5])), 1.5, epsilon = 1e-15);
        assert!(finite_max_combine(&[]).is_err());
    }

    #[test]
    fn equivalence_constants_between_references() {
        assert_eq!(Reference::LInf.equivalence(Reference::L2, 4), (0.5, 1.0));
        assert_eq!(Reference::L1.equivalence(Reference::L2, 4), (1.0, 2.0));
        assert_eq!(Reference::L2.equivalence(Reference::L2, 7), (1.0, 1.0));
    }

    #[test]
    fn bundled_norms_satisfy_axioms() {
        let mut rng = seeded_rng(2, 0);
        for n in [NormOracle::l1(5), NormOracle::l2(5), NormOracle::linf(5)] {
            n.check_axioms(500, 1e-12, &mut rng).unwrap();
        }
    }
}
