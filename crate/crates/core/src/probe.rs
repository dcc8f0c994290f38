//! One-sided estimators: dual norms, midpoint suprema (empirical moduli of
//! rotundity) and slice diameters.
//!
//! Every estimate here is a lower bound found by multi-start local ascent
//! within `ToleranceConfig::optimizer_budget` evaluations per start. The
//! starting set always contains the canonical basis directions, so
//! coordinate-aligned extremal configurations are reached exactly.

use rand::Rng;
use serde::Serialize;

use crate::ascent::{multi_start_ascent, AscentOptions};
use crate::config::ToleranceConfig;
use crate::coord::{CoordFunctional, CoordVector};
use crate::error::{invalid, violated, Error, Result};
use crate::norm::NormOracle;
use crate::numeric::bisect_root;
use crate::sampling::gaussian;

/// Lower and upper bounds on a dual norm `sup { <phi, x> : norm(x) <= 1 }`.
#[derive(Debug, Clone, Serialize)]
pub struct DualBounds {
    pub lower: f64,
    pub upper: f64,
    /// Unit-norm point attaining `lower`.
    pub argmax: CoordVector,
}

fn unit_l2(v: &mut [f64]) {
    let n = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|a| *a /= n);
    }
}

fn basis_vec(dim: usize, i: usize, s: f64) -> Vec<f64> {
    let mut v = vec![0.0; dim];
    v[i] = s;
    v
}

fn check_dim(norm: &NormOracle, dim: usize) -> Result<()> {
    if dim == 0 || dim > norm.dim() {
        return Err(invalid(format!(
            "probe dimension {dim} outside 1..={}",
            norm.dim()
        )));
    }
    Ok(())
}

fn embed(norm: &NormOracle, theta: &[f64]) -> CoordVector {
    let mut v = theta.to_vec();
    v.resize(norm.dim(), 0.0);
    CoordVector::from_values(v)
}

/// Bounds on the dual norm of `phi` over the first `dim` coordinates.
///
/// `certificate` is an analytic majorant `c` with `|<phi, x>| <= c norm(x)`
/// supplied by the caller; without one the upper bound is `+inf`. A lower
/// bound above the certificate is reported as an invariant violation.
pub fn dual_norm_bounds(
    norm: &NormOracle,
    phi: &CoordFunctional,
    dim: usize,
    cfg: &ToleranceConfig,
    certificate: Option<f64>,
) -> Result<DualBounds> {
    cfg.validate()?;
    check_dim(norm, dim)?;
    if phi.truncated(dim).is_zero() {
        return Ok(DualBounds {
            lower: 0.0,
            upper: 0.0,
            argmax: CoordVector::zeros(norm.dim()),
        });
    }
    let objective = |theta: &[f64]| {
        let x = embed(norm, theta);
        let n = norm.eval(&x);
        if n > 0.0 {
            phi.pair(&x) / n
        } else {
            f64::NEG_INFINITY
        }
    };
    let mut starts: Vec<Vec<f64>> = Vec::new();
    let coeffs: Vec<f64> = (1..=dim).map(|i| phi.get(i)).collect();
    starts.push(coeffs.clone());
    starts.push(coeffs.iter().map(|c| c.signum() * (*c != 0.0) as u8 as f64).collect());
    for (i, c) in coeffs.iter().enumerate() {
        if *c != 0.0 {
            starts.push(basis_vec(dim, i, c.signum()));
        }
    }
    let mut rng = cfg.rng(u64::MAX);
    for _ in 0..cfg.restarts {
        starts.push(gaussian(&mut rng, dim).into_values());
    }
    let best = multi_start_ascent(
        &objective,
        &unit_l2,
        starts,
        &AscentOptions::with_budget(cfg.optimizer_budget),
        cfg.rng_seed,
    )
    .expect("nonempty start set");
    let x = embed(norm, &best.point);
    let argmax = x.scaled(1.0 / norm.eval(&x));
    let upper = certificate.unwrap_or(f64::INFINITY);
    if best.value > upper * (1.0 + 1e-12) + 1e-12 {
        return Err(violated(format!(
            "dual lower bound {} exceeds certified majorant {upper}",
            best.value
        )));
    }
    Ok(DualBounds {
        lower: best.value,
        upper,
        argmax,
    })
}

/// Side constraint on the pair `(x, y)` in [`midpoint_sup_probe`].
#[derive(Debug, Clone)]
pub enum ProbeConstraint {
    /// `|x - y|_ref >= t` (uniform rotundity).
    None,
    /// `y - x = t v` (rotundity in the direction `v`).
    Direction(CoordVector),
    /// `|<psi, x - y>| >= t` (weak uniform rotundity against `psi`).
    Functional(CoordFunctional),
}

/// Best pair found by [`midpoint_sup_probe`].
#[derive(Debug, Clone, Serialize)]
pub struct MidpointEstimate {
    /// Lower estimate of `sup norm((x + y) / 2)`.
    pub value: f64,
    pub x: CoordVector,
    pub y: CoordVector,
    pub evaluations: usize,
}

/// Largest `s >= 0` with `norm(s u ± d) <= 1`, for `norm(u) = 1`.
///
/// `s -> max(norm(s u + d), norm(s u - d))` is even and convex, so it is
/// nondecreasing on `[0, inf)` and the feasible set is an interval.
fn half_chord(norm: &NormOracle, u: &CoordVector, d: &CoordVector) -> Option<f64> {
    let nd = norm.eval(d);
    if nd > 1.0 {
        return None;
    }
    let g = |s: f64| {
        let a = norm.eval(&d.add_scaled(s, u));
        let b = norm.eval(&d.add_scaled(-s, u));
        a.max(b) - 1.0
    };
    Some(bisect_root(g, 0.0, 1.0 + nd, 1e-13))
}

/// Lower estimate of `sup { norm((x + y)/2) : norm(x), norm(y) <= 1 }` under
/// the given constraint with separation `t`, searched in the first `dim`
/// coordinates. `1 - value` is the empirical modulus of rotundity.
///
/// Pairs are parametrised as `x = s u - d`, `y = s u + d` with `norm(u) = 1`
/// and `d` fixed by the constraint; for each `(u, d)` the largest feasible
/// `s` is found by bisection and is the midpoint norm.
pub fn midpoint_sup_probe(
    norm: &NormOracle,
    t: f64,
    constraint: &ProbeConstraint,
    dim: usize,
    cfg: &ToleranceConfig,
) -> Result<MidpointEstimate> {
    cfg.validate()?;
    check_dim(norm, dim)?;
    if !(t > 0.0) {
        return Err(invalid(format!("separation must be positive, got {t}")));
    }
    let mut rng = cfg.rng(u64::MAX - 1);
    let opts = AscentOptions::with_budget(cfg.optimizer_budget);

    // Maps the search parameters to (u, d); u is returned unnormalised.
    let split = |theta: &[f64]| -> Option<(CoordVector, CoordVector)> {
        match constraint {
            ProbeConstraint::Direction(v) => Some((embed(norm, theta), v.scaled(0.5 * t))),
            ProbeConstraint::None => {
                let (u, w) = theta.split_at(dim);
                let w = embed(norm, w);
                let r = norm.reference_norm(&w);
                (r > 0.0).then(|| (embed(norm, u), w.scaled(0.5 * t / r)))
            }
            ProbeConstraint::Functional(psi) => {
                let (u, w) = theta.split_at(dim);
                let w = embed(norm, w);
                let p = psi.pair(&w).abs();
                (p > 1e-12 * w.norm_l2()).then(|| (embed(norm, u), w.scaled(0.5 * t / p)))
            }
        }
    };
    let objective = |theta: &[f64]| -> f64 {
        let Some((u, d)) = split(theta) else {
            return f64::NEG_INFINITY;
        };
        let nu = norm.eval(&u);
        if nu == 0.0 {
            return f64::NEG_INFINITY;
        }
        half_chord(norm, &u.scaled(1.0 / nu), &d).unwrap_or(f64::NEG_INFINITY)
    };

    let mut starts: Vec<Vec<f64>> = Vec::new();
    match constraint {
        ProbeConstraint::Direction(v) => {
            if v.truncated(dim).is_zero() {
                return Err(invalid("direction must be nonzero in the probe dimension"));
            }
            if norm.eval(&v.scaled(0.5 * t)) > 1.0 {
                return Err(Error::Infeasible(format!(
                    "separation {t} along the direction exceeds the ball diameter"
                )));
            }
            for i in 0..dim {
                starts.push(basis_vec(dim, i, 1.0));
            }
            for _ in 0..cfg.restarts {
                starts.push(gaussian(&mut rng, dim).into_values());
            }
        }
        ProbeConstraint::None => {
            for i in 0..dim {
                let j = (i + 1) % dim;
                if i != j {
                    starts.push([basis_vec(dim, i, 1.0), basis_vec(dim, j, 1.0)].concat());
                    starts.push([basis_vec(dim, j, 1.0), basis_vec(dim, i, 1.0)].concat());
                }
            }
            for _ in 0..cfg.restarts {
                starts.push(gaussian(&mut rng, 2 * dim).into_values());
            }
        }
        ProbeConstraint::Functional(psi) => {
            let w: Vec<f64> = (1..=dim).map(|i| psi.get(i)).collect();
            if w.iter().all(|c| *c == 0.0) {
                return Err(invalid("functional must be nonzero in the probe dimension"));
            }
            for i in 0..dim {
                starts.push([basis_vec(dim, i, 1.0), w.clone()].concat());
            }
            for _ in 0..cfg.restarts {
                let u = gaussian(&mut rng, dim).into_values();
                let jitter: Vec<f64> = w.iter().map(|c| c + 0.1 * rng.random_range(-1.0..1.0)).collect();
                starts.push([u, jitter].concat());
            }
        }
    }

    // Keep u on the Euclidean sphere and, for two-block charts, the second
    // block too; both objectives are invariant under these rescalings.
    let normalize = |theta: &mut [f64]| match constraint {
        ProbeConstraint::Direction(_) => unit_l2(theta),
        _ => {
            let (u, w) = theta.split_at_mut(dim);
            unit_l2(u);
            unit_l2(w);
        }
    };
    let best = multi_start_ascent(&objective, &normalize, starts, &opts, cfg.rng_seed)
        .expect("nonempty start set");
    if !best.value.is_finite() {
        return Err(Error::Infeasible(format!(
            "no feasible pair with separation {t} found"
        )));
    }
    let (u, d) = split(&best.point).expect("best point is feasible");
    let u = u.scaled(best.value / norm.eval(&u));
    Ok(MidpointEstimate {
        value: best.value,
        x: &u - &d,
        y: &u + &d,
        evaluations: best.evaluations,
    })
}

/// Lower estimate of the reference-norm diameter of the closed slice
/// `{ x : norm(x) <= 1, <f, x> >= r }`, searched in the first `dim`
/// coordinates.
///
/// Chords are parametrised by a center `c` in the slice and a unit
/// direction `d`; the half-length is the smaller of the linear bound from
/// the level and the bisected norm bound.
pub fn slice_diameter_estimate(
    norm: &NormOracle,
    f: &CoordFunctional,
    r: f64,
    dim: usize,
    cfg: &ToleranceConfig,
) -> Result<f64> {
    let top = dual_norm_bounds(norm, f, dim, cfg, None)?;
    let slack = 1e-12 * r.abs().max(1.0);
    if top.lower < r - slack {
        return Err(Error::EmptySlice {
            sup: top.lower,
            level: r,
        });
    }
    let level = r - slack;
    let objective = |theta: &[f64]| -> f64 {
        let (c, w) = theta.split_at(dim);
        let c = embed(norm, c);
        let d = embed(norm, w);
        let rd = norm.reference_norm(&d);
        let nc = norm.eval(&c);
        let fc = f.pair(&c);
        if rd == 0.0 || nc > 1.0 || fc < level {
            return f64::NEG_INFINITY;
        }
        let d = d.scaled(1.0 / rd);
        let fd = f.pair(&d).abs();
        let s_lin = if fd == 0.0 {
            f64::INFINITY
        } else {
            (fc - level) / fd
        };
        let nd = norm.eval(&d);
        let g = |s: f64| {
            let a = norm.eval(&c.add_scaled(s, &d));
            let b = norm.eval(&c.add_scaled(-s, &d));
            a.max(b) - 1.0
        };
        let upper = (1.0 + nc) / nd;
        let s_norm = if g(0.0) > 0.0 {
            0.0
        } else {
            bisect_root(g, 0.0, upper, 1e-13)
        };
        2.0 * s_lin.min(s_norm)
    };

    let top_point: Vec<f64> = top.argmax.values()[..dim].to_vec();
    let mid_scale = if top.lower > 0.0 {
        (0.5 * (r + top.lower) / top.lower).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let center: Vec<f64> = top_point.iter().map(|v| v * mid_scale).collect();
    let mut rng = cfg.rng(u64::MAX - 2);
    let mut starts = Vec::new();
    for c in [&center, &top_point] {
        for i in 0..dim {
            starts.push([c.clone(), basis_vec(dim, i, 1.0)].concat());
        }
    }
    for _ in 0..cfg.restarts {
        starts.push([center.clone(), gaussian(&mut rng, dim).into_values()].concat());
    }
    let normalize = |theta: &mut [f64]| {
        let (_, w) = theta.split_at_mut(dim);
        unit_l2(w);
    };
    let opts = AscentOptions {
        initial_step: 0.1,
        ..AscentOptions::with_budget(cfg.optimizer_budget)
    };
    let best = multi_start_ascent(&objective, &normalize, starts, &opts, cfg.rng_seed)
        .expect("nonempty start set");
    Ok(best.value.max(0.0))
}
