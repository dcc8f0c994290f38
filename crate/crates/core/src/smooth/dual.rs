//! Witnesses that the dual of the smooth `c0` norm is not strictly convex:
//! the functionals `f`, `g` and the points `z_n` with
//! `<f, z_n> = <g, z_n> -> 1` and `⟦z_n⟧ -> 1`.

use serde::Serialize;

use super::level::LevelSetNorm;
use super::polyhedral::{polyhedral_levels, PolyKind};
use crate::config::ToleranceConfig;
use crate::coord::{CoordFunctional, CoordVector};
use crate::error::{Error, Result};
use crate::probe::{dual_norm_bounds, DualBounds};
use crate::sampling::uniform_cube;
use crate::smooth::polyhedral::polyhedral_eval;
use crate::smooth::schedule::ParamSchedule;

/// Random points used for the domination certificate.
pub const DOMINATION_SAMPLES: usize = 10_000;

/// `f` and `g` truncated to the schedule depth `N` (products over `j <= N`).
pub fn dual_functionals(p: &ParamSchedule) -> (CoordFunctional, CoordFunctional) {
    let n = p.depth();
    let mut f = vec![0.0; n];
    f[0] = p.inv_w_product(2, n);
    for i in 2..=n {
        f[i - 1] = p.inv_w_product(i + 1, n) / p.h(i);
    }
    let mut g = f.clone();
    g[0] = 0.0;
    g[1] = p.inv_w_product(3, n);
    (CoordFunctional::from_values(f), CoordFunctional::from_values(g))
}

/// `z_n` with `(z_n)_i = Π_{j=i+1}^{n} (h_j - 1)/(h_j - δ)`, `(z_n)_n = 1`.
pub fn witness_point(p: &ParamSchedule, n: usize) -> CoordVector {
    let mut z = vec![0.0; p.depth()];
    z[n - 1] = 1.0;
    for i in (1..n).rev() {
        z[i - 1] = z[i] * p.z_ratio(i + 1);
    }
    CoordVector::from_values(z)
}

/// Left side of the domination inequality at depth `n` for the chain
/// starting at `start`:
/// `Π_{j>start}^n (1/w_j) |x_start| + Σ_{i>start}^n (1/h_i) Π_{j=i+1}^n (1/w_j) |x_i|`.
/// Start 1 gives the coefficients of `f`, start 2 those of `g`.
pub fn domination_sum(p: &ParamSchedule, start: usize, n: usize, x: &CoordVector) -> f64 {
    let mut s = x.get(start).abs();
    for k in start + 1..=n {
        s = s / p.w(k) + x.get(k).abs() / p.h(k);
    }
    s
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessRow {
    pub n: usize,
    pub z: Vec<f64>,
    pub one_norm: f64,
    pub inf_norm: f64,
    pub final_norm: f64,
    /// `(1+η_n)²`.
    pub final_bound: f64,
    pub pair_f: f64,
    pub pair_g: f64,
    /// `Π_{j>n}^{N} 1/w_j`.
    pub product: f64,
    /// `<(f+g)/2, z_n> / ⟦z_n⟧`, a lower bound on `⟦(f+g)/2⟧*`.
    pub mid_lower: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DominationAudit {
    pub samples: usize,
    /// Largest `lhs - ⟦P_n x⟧_{∞,n}` seen over samples and depths.
    pub worst_excess: f64,
    pub violations: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DualWitnessReport {
    pub delta: f64,
    pub depth: usize,
    pub n_max: usize,
    pub f: Vec<f64>,
    pub g: Vec<f64>,
    pub rows: Vec<WitnessRow>,
    pub domination: DominationAudit,
    pub dual_f: DualBounds,
    pub dual_g: DualBounds,
    /// `mid_lower` at `n_max`.
    pub mid_lower: f64,
    /// `(1+η_{n_max})^{-2} Π_{j>n_max}^{N} 1/w_j`.
    pub mid_reference: f64,
    pub failures: Vec<String>,
}

impl DualWitnessReport {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Builds `f`, `g`, `z_2..z_{n_max}` and checks:
/// unit polyhedral norms of `z_n`, `⟦z_n⟧ <= (1+η_n)²`, equal pairings with
/// the tail product, the domination certificate on random points (which
/// certifies `⟦f⟧*, ⟦g⟧* <= 1`), and the lower bound for `⟦(f+g)/2⟧*`.
/// Failed checks are listed in `failures` rather than aborting.
pub fn dual_witness_report(norm: &LevelSetNorm, n_max: usize, cfg: &ToleranceConfig) -> Result<DualWitnessReport> {
    let p = norm.schedule();
    let depth = p.depth();
    if n_max < 2 || n_max > depth {
        return Err(Error::IndexOutOfRange { index: n_max, max: depth });
    }
    let (f, g) = dual_functionals(p);
    let mid = f.add_scaled(1.0, &g).scaled(0.5);
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    for n in 2..=n_max {
        let z = witness_point(p, n);
        let one_norm = polyhedral_eval(p, PolyKind::One, n, &z)?;
        let inf_norm = polyhedral_eval(p, PolyKind::Inf, n, &z)?;
        let final_norm = norm.final_norm_eval(&z)?;
        let final_bound = (1.0 + p.eta(n)).powi(2);
        let product = p.inv_w_product(n + 1, depth);
        let (pair_f, pair_g) = (f.pair(&z), g.pair(&z));
        if (one_norm - 1.0).abs() > 1e-10 || (inf_norm - 1.0).abs() > 1e-10 {
            failures.push(format!("z_{n}: polyhedral norms ({one_norm}, {inf_norm}) differ from 1"));
        }
        if final_norm > final_bound + 1e-9 {
            failures.push(format!("z_{n}: final norm {final_norm} exceeds (1+eta)^2 = {final_bound}"));
        }
        if (pair_f - product).abs() > 1e-10 || (pair_g - product).abs() > 1e-10 {
            failures.push(format!("z_{n}: pairings ({pair_f}, {pair_g}) differ from product {product}"));
        }
        rows.push(WitnessRow {
            n,
            z: z.values()[..n].to_vec(),
            one_norm,
            inf_norm,
            final_norm,
            final_bound,
            pair_f,
            pair_g,
            product,
            mid_lower: mid.pair(&z) / final_norm,
        });
    }

    let mut rng = cfg.rng(0xd0);
    let mut worst_excess = f64::NEG_INFINITY;
    let mut violations = 0;
    for _ in 0..DOMINATION_SAMPLES {
        let x = uniform_cube(&mut rng, depth);
        let (_, inf) = polyhedral_levels(p, depth, &x);
        for start in [1, 2] {
            for n in start..=depth {
                let excess = domination_sum(p, start, n, &x) - inf[n - 1];
                worst_excess = worst_excess.max(excess);
                if excess > 1e-12 {
                    violations += 1;
                }
            }
        }
        // At depth N the chains dominate |<f, x>| and |<g, x>|.
        if f.pair(&x).abs() > domination_sum(p, 1, depth, &x) + 1e-12
            || g.pair(&x).abs() > domination_sum(p, 2, depth, &x) + 1e-12
        {
            violations += 1;
        }
    }
    if violations > 0 {
        failures.push(format!("domination certificate failed at {violations} sampled points"));
    }
    let certificate = (violations == 0).then_some(1.0);
    let oracle = std::sync::Arc::new(LevelSetNorm::new(p)?).oracle();
    let dual_f = dual_norm_bounds(&oracle, &f, depth, cfg, certificate)?;
    let dual_g = dual_norm_bounds(&oracle, &g, depth, cfg, certificate)?;

    let last = rows.last().expect("n_max >= 2");
    let mid_lower = last.mid_lower;
    let mid_reference = p.inv_w_product(n_max + 1, depth) / (1.0 + p.eta(n_max)).powi(2);
    if mid_lower < mid_reference - 1e-9 {
        failures.push(format!("dual lower bound {mid_lower} below reference {mid_reference}"));
    }
    Ok(DualWitnessReport {
        delta: p.delta(),
        depth,
        n_max,
        f: f.values().to_vec(),
        g: g.values().to_vec(),
        rows,
        domination: DominationAudit {
            samples: DOMINATION_SAMPLES,
            worst_excess,
            violations,
        },
        dual_f,
        dual_g,
        mid_lower,
        mid_reference,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smooth::schedule::build_schedule;
    use approx::assert_abs_diff_eq;

    #[test]
    fn witness_values_at_quarter_delta() {
        let p = build_schedule(0.25, 8).unwrap();
        let z2 = witness_point(&p, 2);
        assert_abs_diff_eq!(z2.get(1), 0.7, epsilon = 1e-15);
        assert_eq!(z2.get(2), 1.0);
        let (f, g) = dual_functionals(&p);
        assert_eq!(g.get(1), 0.0);
        let prod = p.inv_w_product(3, 8);
        assert_abs_diff_eq!(f.pair(&z2), prod, epsilon = 1e-14);
        assert_abs_diff_eq!(g.pair(&z2), prod, epsilon = 1e-14);
    }

    #[test]
    fn domination_sum_matches_coefficients() {
        let p = build_schedule(0.25, 6).unwrap();
        let (f, g) = dual_functionals(&p);
        let x = CoordVector::from_values(vec![0.3, 0.1, 0.9, 0.2, 0.4, 0.5]);
        assert_abs_diff_eq!(domination_sum(&p, 1, 6, &x), f.pair(&x), epsilon = 1e-15);
        assert_abs_diff_eq!(domination_sum(&p, 2, 6, &x), g.pair(&x), epsilon = 1e-15);
    }
}
