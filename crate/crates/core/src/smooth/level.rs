//! The level-set norms `⟦·⟧_n` and the final norm `sup_n ⟦P_n x⟧_n`.

use super::agg::SmoothAggNorm;
use super::bump::BumpFunction;
use super::polyhedral::{functional_list, PolyKind};
use super::schedule::ParamSchedule;
use crate::coord::CoordVector;
use crate::error::{violated, Error, Result};
use crate::norm::{NormOracle, Reference};
use crate::numeric::bisect_threshold;

struct Level {
    agg: SmoothAggNorm,
    bump: BumpFunction,
}

/// The tower of smooth norms `⟦·⟧_1, ..., ⟦·⟧_N` for one schedule.
///
/// `⟦x⟧_1 = |x_1|`; for `n >= 2`, `⟦·⟧_n` is the gauge of
/// `{ν_n <= 1}` with `ν_n(x) = φ_n(agg_n(x)) + φ_n(⟦P_{n-1} x⟧_{n-1}) + φ_n(|x_n|)`.
/// Each gauge is found from the three component values alone, since
/// `ν_n(x / t)` only depends on them divided by `t`.
pub struct LevelSetNorm {
    schedule: ParamSchedule,
    levels: Vec<Level>,
}

/// Inputs of `ν_n` at `x`: `(agg_n(x), ⟦P_{n-1} x⟧_{n-1}, |x_n|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelComponents {
    pub agg: f64,
    pub prev: f64,
    pub last: f64,
}

impl LevelComponents {
    pub fn max(&self) -> f64 {
        self.agg.max(self.prev).max(self.last)
    }
}

impl LevelSetNorm {
    pub fn new(schedule: &ParamSchedule) -> Result<Self> {
        let levels = (2..=schedule.depth())
            .map(|n| {
                let eta = schedule.eta(n);
                let list = functional_list(schedule, PolyKind::One, n)?;
                Ok(Level {
                    agg: SmoothAggNorm::new(&list.functionals, eta)?,
                    bump: BumpFunction::new(eta)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            schedule: schedule.clone(),
            levels,
        })
    }

    pub fn schedule(&self) -> &ParamSchedule {
        &self.schedule
    }

    pub fn depth(&self) -> usize {
        self.schedule.depth()
    }

    /// The smoothing of `⟦·⟧_{1,n}`, `n >= 2`.
    pub fn agg(&self, n: usize) -> &SmoothAggNorm {
        &self.levels[n - 2].agg
    }

    pub fn bump(&self, n: usize) -> &BumpFunction {
        &self.levels[n - 2].bump
    }

    fn nu_scaled(&self, n: usize, c: &LevelComponents, t: f64) -> f64 {
        let b = &self.levels[n - 2].bump;
        b.value_fast(c.agg / t) + b.value_fast(c.prev / t) + b.value_fast(c.last / t)
    }

    /// `ν_n(x)` from its components.
    pub fn nu(&self, n: usize, c: &LevelComponents) -> f64 {
        self.nu_scaled(n, c, 1.0)
    }

    /// Root `t` of `ν_n(x/t) = 1`, bisected to floating-point resolution on
    /// `[M, (1+η_n) M]`, `M = max` of the components: at `t = M` one term is
    /// `φ(1) = 1`, and at `(1+η_n) M` every argument is at most `a`.
    fn solve(&self, n: usize, c: &LevelComponents) -> Result<f64> {
        let m = c.max();
        if m == 0.0 {
            return Ok(0.0);
        }
        let hi = (1.0 + self.schedule.eta(n)) * m;
        if self.nu_scaled(n, c, m) < 1.0 - 1e-12 || self.nu_scaled(n, c, hi) > 1.0 {
            return Err(violated(format!("level {n} gauge bracket [{m}, {hi}] does not straddle 1")));
        }
        let (lo, up) = bisect_threshold(|t| self.nu_scaled(n, c, t) <= 1.0, m, hi, 0.0);
        Ok(0.5 * (lo + up))
    }

    fn check_support(&self, n: usize, x: &CoordVector) -> Result<()> {
        if n == 0 || n > self.depth() {
            return Err(Error::IndexOutOfRange {
                index: n,
                max: self.depth(),
            });
        }
        match x.support_max() {
            Some(s) if s > n => Err(Error::SupportOutOfBounds { index: s, bound: n }),
            _ => Ok(()),
        }
    }

    /// `⟦P_k x⟧_k` for `k = 1..=n` together with the components used at each
    /// level (`None` at level 1).
    pub fn level_trace(&self, n: usize, x: &CoordVector) -> Result<Vec<(f64, Option<LevelComponents>)>> {
        let mut out = Vec::with_capacity(n);
        let mut prev = x.get(1).abs();
        out.push((prev, None));
        for k in 2..=n {
            let c = LevelComponents {
                agg: self.agg(k).eval(&x.truncated(k)),
                prev,
                last: x.get(k).abs(),
            };
            prev = self.solve(k, &c)?;
            out.push((prev, Some(c)));
        }
        Ok(out)
    }

    /// `⟦x⟧_n` for `x` supported in the first `n` coordinates.
    pub fn smooth_ball_gauge(&self, n: usize, x: &CoordVector) -> Result<f64> {
        self.check_support(n, x)?;
        Ok(self.level_trace(n, x)?.last().expect("n >= 1").0)
    }

    /// `⟦x⟧ = max_{n <= N(x)} ⟦P_n x⟧_n`, `N(x)` the last nonzero index. For
    /// larger `n`, `x_n = 0` and the levels freeze, so the cut is exact.
    pub fn final_norm_eval(&self, x: &CoordVector) -> Result<f64> {
        let Some(top) = x.support_max() else {
            return Ok(0.0);
        };
        if top > self.depth() {
            return Err(Error::SupportOutOfBounds {
                index: top,
                bound: self.depth(),
            });
        }
        Ok(self.level_trace(top, x)?.iter().fold(0.0, |m, (v, _)| m.max(*v)))
    }

    /// The final norm as an oracle against `ℓ∞` with constants `(1, 1/δ²)`.
    pub fn oracle(self: &std::sync::Arc<Self>) -> NormOracle {
        let me = self.clone();
        let d = self.schedule.delta();
        NormOracle::new(
            "smooth-c0",
            self.depth(),
            Reference::LInf,
            (1.0, 1.0 / (d * d)),
            move |x| me.final_norm_eval(x).expect("support within depth"),
        )
        .expect("valid constants")
    }

    /// `⟦·⟧_n` as an oracle on `R^n`.
    pub fn level_oracle(self: &std::sync::Arc<Self>, n: usize) -> NormOracle {
        let me = self.clone();
        let hi = self.schedule.eta_product(n) * self.schedule.c(n);
        NormOracle::new(
            format!("smooth-level-{n}"),
            n,
            Reference::LInf,
            (1.0, hi),
            move |x| me.smooth_ball_gauge(n, x).expect("support within level"),
        )
        .expect("valid constants")
    }
}
