//! Sampled audits of the polyhedral and smooth norms.
//!
//! Every check is phrased as an excess, the amount by which an inequality
//! fails (negative when it holds with slack). A sample is a violation when
//! its excess is above the tolerance.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::agg::SmoothAggNorm;
use super::level::LevelSetNorm;
use super::polyhedral::{functional_list, polyhedral_eval, PolyKind};
use super::schedule::ParamSchedule;
use crate::config::ToleranceConfig;
use crate::coord::CoordVector;
use crate::error::{Error, Result};
use crate::sampling::{l2_sphere, uniform_cube};

/// Relative slack for inequalities between computed norms.
pub const REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Serialize)]
pub struct SampleAudit {
    pub check: String,
    pub depth: usize,
    pub samples: usize,
    pub violations: usize,
    pub worst_excess: f64,
    pub tolerance: f64,
}

impl SampleAudit {
    pub fn pass(&self) -> bool {
        self.violations == 0
    }
}

fn run<F>(check: &str, depth: usize, xs: &[CoordVector], tolerance: f64, excess: F) -> Result<SampleAudit>
where
    F: Fn(&CoordVector) -> Result<f64> + Sync,
{
    let values = xs.par_iter().map(&excess).collect::<Result<Vec<f64>>>()?;
    Ok(SampleAudit {
        check: check.to_string(),
        depth,
        samples: xs.len(),
        violations: values.iter().filter(|e| **e > tolerance).count(),
        worst_excess: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        tolerance,
    })
}

fn cube_samples(cfg: &ToleranceConfig, stream: u64, n: usize, samples: usize) -> Vec<CoordVector> {
    let mut rng = cfg.rng(stream);
    (0..samples).map(|_| uniform_cube(&mut rng, n)).collect()
}

fn check_level(p: &ParamSchedule, n: usize) -> Result<()> {
    if n < 2 || n > p.depth() {
        return Err(Error::IndexOutOfRange { index: n, max: p.depth() });
    }
    Ok(())
}

/// `‖x‖∞ <= ⟦x⟧_{∞,n} <= c_n ‖x‖∞`.
pub fn polyhedral_sandwich_audit(p: &ParamSchedule, n: usize, samples: usize, cfg: &ToleranceConfig) -> Result<SampleAudit> {
    let xs = cube_samples(cfg, 0x100 + n as u64, n, samples);
    run("polyhedral sandwich", n, &xs, 0.0, |x| {
        let v = polyhedral_eval(p, PolyKind::Inf, n, x)?;
        let r = x.norm_linf();
        Ok((r - v).max(v - p.c(n) * r) - REL_TOL * r)
    })
}

/// Functional-list maximum against the recursion, absolute `1e-12`.
pub fn list_recursion_audit(p: &ParamSchedule, n: usize, samples: usize, cfg: &ToleranceConfig) -> Result<SampleAudit> {
    let list = functional_list(p, PolyKind::Inf, n)?;
    let xs = cube_samples(cfg, 0x200 + n as u64, n, samples);
    run("list/recursion agreement", n, &xs, 1e-12, |x| {
        Ok((list.eval(x) - polyhedral_eval(p, PolyKind::Inf, n, x)?).abs())
    })
}

/// `max <= agg <= (1+η_n) max` for the aggregate at depth `n`.
pub fn smoothing_sandwich_audit(norm: &LevelSetNorm, n: usize, samples: usize, cfg: &ToleranceConfig) -> Result<SampleAudit> {
    check_level(norm.schedule(), n)?;
    let agg = norm.agg(n);
    let xs = cube_samples(cfg, 0x300 + n as u64, n, samples);
    run("smoothing sandwich", n, &xs, 0.0, |x| {
        let m = agg.max_eval(x);
        let a = agg.eval(x);
        Ok((m - a).max(a - (1.0 + agg.eta()) * m) - REL_TOL * m)
    })
}

/// Points of `R^n` whose last coordinate is below the `δ/2` threshold for
/// even indices and above it for odd ones.
fn threshold_samples(p: &ParamSchedule, n: usize, samples: usize, cfg: &ToleranceConfig, stream: u64) -> Vec<CoordVector> {
    let mut rng = cfg.rng(stream);
    let half = 0.5 * p.delta();
    (0..samples)
        .map(|k| {
            let head = uniform_cube(&mut rng, n - 1);
            let r = head.norm_linf();
            let mut v = head.padded(n).expect("n - 1 < n");
            let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            let last = if k % 2 == 0 {
                rng.random_range(0.0..=half) * r
            } else {
                rng.random_range(half..2.0) * r
            };
            v.set(n, sign * last);
            v
        })
        .collect()
}

/// `max{agg, prev, |x_n|} <= ⟦x⟧_n <= (1+η_n) max{...}` and the derived
/// chain `⟦x⟧_{∞,n} <= ⟦x⟧_n <= Π_{j<=n} (1+η_j)² ⟦x⟧_{∞,n}`.
pub fn property_ii_audit(norm: &LevelSetNorm, n: usize, samples: usize, cfg: &ToleranceConfig) -> Result<SampleAudit> {
    let p = norm.schedule();
    check_level(p, n)?;
    let xs = threshold_samples(p, n, samples, cfg, 0x400 + n as u64);
    run("property (ii)", n, &xs, 0.0, |x| {
        let trace = norm.level_trace(n, x)?;
        let (g, c) = trace[n - 1];
        let m = c.expect("level >= 2").max();
        let inf = polyhedral_eval(p, PolyKind::Inf, n, x)?;
        let e1 = (m - g).max(g - (1.0 + p.eta(n)) * m);
        let e2 = (inf - g).max(g - p.eta_product(n) * inf);
        Ok(e1.max(e2) - REL_TOL * g)
    })
}

/// `|x_n| <= (δ/2) ‖x‖∞` forces `⟦x⟧_n = ⟦P_{n-1} x⟧_{n-1}`.
pub fn property_iii_audit(norm: &LevelSetNorm, n: usize, samples: usize, cfg: &ToleranceConfig) -> Result<SampleAudit> {
    let p = norm.schedule();
    check_level(p, n)?;
    let xs: Vec<CoordVector> = threshold_samples(p, n, 2 * samples, cfg, 0x500 + n as u64)
        .into_iter()
        .step_by(2)
        .collect();
    run("property (iii)", n, &xs, 0.0, |x| {
        let trace = norm.level_trace(n, x)?;
        let (g, prev) = (trace[n - 1].0, trace[n - 2].0);
        Ok((g - prev).abs() - REL_TOL * g)
    })
}

/// Central-difference gradient with step `h` per coordinate.
pub fn difference_gradient(agg: &SmoothAggNorm, x: &CoordVector, h: f64) -> Vec<f64> {
    (1..=agg.dim())
        .map(|i| {
            let mut up = x.clone();
            let mut down = x.clone();
            up.set(i, x.get(i) + h);
            down.set(i, x.get(i) - h);
            (agg.eval(&up) - agg.eval(&down)) / (2.0 * h)
        })
        .collect()
}

/// Step for [`difference_gradient`]: the aggregate bends on the scale
/// `1/p`, so the step shrinks with the exponent.
pub fn difference_step(agg: &SmoothAggNorm) -> f64 {
    (1e-4 / agg.exponent() as f64).min(1e-6)
}

/// Analytic against central-difference gradients at points of the
/// Euclidean sphere with no coordinate below `1e-8`; the excess is the
/// relative sup-norm error.
pub fn gradient_audit(norm: &LevelSetNorm, n: usize, points: usize, cfg: &ToleranceConfig) -> Result<SampleAudit> {
    check_level(norm.schedule(), n)?;
    let agg = norm.agg(n);
    let mut rng = cfg.rng(0x600 + n as u64);
    let xs: Vec<CoordVector> = std::iter::repeat_with(|| l2_sphere(&mut rng, n))
        .filter(|x| x.values().iter().all(|v| v.abs() >= 1e-8))
        .take(points)
        .collect();
    let h = difference_step(agg);
    run("gradient", n, &xs, 1e-6, |x| {
        let an = agg.gradient(x);
        let fd = difference_gradient(agg, x, h);
        let scale = an.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let err = an.iter().zip(&fd).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        Ok(err / scale)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smooth::schedule::build_schedule;

    #[test]
    fn audits_pass_at_small_depth() {
        let p = build_schedule(0.25, 4).unwrap();
        let l = LevelSetNorm::new(&p).unwrap();
        let cfg = ToleranceConfig::default();
        for n in 2..=4 {
            assert!(polyhedral_sandwich_audit(&p, n, 200, &cfg).unwrap().pass());
            assert!(list_recursion_audit(&p, n, 200, &cfg).unwrap().pass());
            assert!(smoothing_sandwich_audit(&l, n, 200, &cfg).unwrap().pass());
            assert!(property_ii_audit(&l, n, 200, &cfg).unwrap().pass());
            assert!(property_iii_audit(&l, n, 200, &cfg).unwrap().pass());
            let g = gradient_audit(&l, n, 20, &cfg).unwrap();
            assert!(g.pass(), "{g:?}");
        }
    }

    #[test]
    fn threshold_samples_straddle() {
        let p = build_schedule(0.25, 4).unwrap();
        let xs = threshold_samples(&p, 4, 100, &ToleranceConfig::default(), 1);
        for (k, x) in xs.iter().enumerate() {
            let below = x.get(4).abs() <= 0.125 * x.truncated(3).norm_linf();
            assert_eq!(below, k % 2 == 0);
        }
    }
}
