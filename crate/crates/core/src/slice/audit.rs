//! Sampled checks of the single-tuple lemma and the norm sandwiches, and
//! the truncation-trend probes for the three model constructions.

use rand::Rng;
use serde::Serialize;

use super::alpha::{slice_norm_eval, AlphaTuple};
use super::omega::{
    make_model_omega, n_norm_eval, omega_norm_eval, omega_norm_exhaustive, omega_norm_oracle,
    witness_pair, OmegaConfig, TheoremKind,
};
use crate::config::ToleranceConfig;
use crate::coord::{CoordFunctional, CoordVector};
use crate::error::Result;
use crate::probe::{midpoint_sup_probe, ProbeConstraint};
use crate::sampling::{gaussian, l2_sphere};

#[derive(Debug, Clone, Serialize)]
pub struct LemmaRow {
    pub n: usize,
    pub lambda: f64,
    /// `(1-δ)²`.
    pub lambda_lo: f64,
    /// `(1+ε)^{-1/2}`.
    pub lambda_hi: f64,
    /// Largest `|⟦p⟧_α - 1|` over the sampled segment points.
    pub segment_worst: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub kind: TheoremKind,
    pub rows: Vec<LemmaRow>,
    pub segment_points: usize,
    pub coincidence_samples: usize,
    /// Largest `|⟦x⟧_α - ‖x‖|` on points with `|<f_n, x>| <= (1-δ)² ‖x‖`.
    pub coincidence_worst: f64,
}

impl LemmaReport {
    pub fn lambda_in_range(&self) -> bool {
        self.rows.iter().all(|r| r.lambda >= r.lambda_lo && r.lambda <= r.lambda_hi)
    }

    pub fn segment_worst(&self) -> f64 {
        self.rows.iter().fold(0.0, |m, r| m.max(r.segment_worst))
    }
}

/// `points` evenly spaced points (endpoints included) of the segment
/// `λ0 x0 + s h0`, `|s| <= (1-λ0)/C`, which lies on the unit sphere.
pub fn flat_segment(alpha: &AlphaTuple, points: usize) -> Vec<CoordVector> {
    let lambda = alpha.constants().lambda0;
    let half = (1.0 - lambda) / alpha.c();
    let center = alpha.x0().scaled(lambda);
    (0..points)
        .map(|k| {
            let s = if points == 1 {
                0.0
            } else {
                -half + 2.0 * half * k as f64 / (points - 1) as f64
            };
            center.add_scaled(s, alpha.h0())
        })
        .collect()
}

/// A random point with `|<f0, x>| <= (1-δ)² ‖x‖`, mixing the tuple vectors
/// with Gaussian noise so that ratios near the threshold occur.
pub fn coincidence_point<R: Rng + ?Sized>(alpha: &AlphaTuple, rng: &mut R) -> CoordVector {
    let slab = (1.0 - alpha.delta()).powi(2);
    loop {
        let a = rng.random_range(-1.0..1.0);
        let b = rng.random_range(-1.0..1.0);
        let c = rng.random_range(0.0..1.0);
        let x = alpha
            .x0()
            .scaled(a)
            .add_scaled(b, alpha.h0())
            .add_scaled(c, &gaussian(rng, alpha.x0().dim()));
        if !x.is_zero() && alpha.f0().pair(&x).abs() <= slab * x.norm_l2() {
            return x;
        }
    }
}

/// The three parts of the lemma for every tuple of `omega`: `λ_n` in its
/// interval, the flat segment on the sphere, and coincidence with `‖·‖`
/// where `f_n` is small. Coincidence samples cycle through the tuples.
pub fn lemma_audit(omega: &OmegaConfig, segment_points: usize, coincidence_samples: usize, cfg: &ToleranceConfig) -> Result<LemmaReport> {
    let mut rows = Vec::with_capacity(omega.n_max());
    for (k, a) in omega.alphas().iter().enumerate() {
        let consts = a.constants();
        let segment_worst = flat_segment(a, segment_points)
            .iter()
            .fold(0.0f64, |m, p| m.max((slice_norm_eval(a, p) - 1.0).abs()));
        rows.push(LemmaRow {
            n: k + 1,
            lambda: consts.lambda0,
            lambda_lo: (1.0 - omega.delta()).powi(2),
            lambda_hi: (1.0 + consts.epsilon).powf(-0.5),
            segment_worst,
        });
    }
    let mut rng = cfg.rng(0x1e);
    let mut coincidence_worst = 0.0f64;
    for s in 0..coincidence_samples {
        let a = &omega.alphas()[s % omega.n_max()];
        let x = coincidence_point(a, &mut rng);
        coincidence_worst = coincidence_worst.max((slice_norm_eval(a, &x) - x.norm_l2()).abs());
    }
    Ok(LemmaReport {
        kind: omega.kind(),
        rows,
        segment_points,
        coincidence_samples,
        coincidence_worst,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SandwichReport {
    pub samples: usize,
    /// Failures of `‖x‖ <= ⟦x⟧_n <= ⟦x⟧_α <= ‖x‖/(1-δ)²` or
    /// `⟦x⟧_α <= (1+η_n) ⟦x⟧_n`.
    pub chain_violations: usize,
    /// Largest `|⟦x⟧_Ω - exhaustive|`, which certifies the cutoff.
    pub cutoff_worst: f64,
}

/// Chain and cutoff checks on Gaussian points and on points near the
/// witness directions, where the slices are active.
pub fn sandwich_audit(omega: &OmegaConfig, samples: usize, cfg: &ToleranceConfig) -> Result<SandwichReport> {
    let mut rng = cfg.rng(0x5a);
    let dim = omega.truncation();
    let hi = 1.0 / (1.0 - omega.delta()).powi(2);
    let mut chain_violations = 0;
    let mut cutoff_worst = 0.0f64;
    for s in 0..samples {
        let n = s % omega.n_max() + 1;
        let x = if s % 2 == 0 {
            gaussian(&mut rng, dim)
        } else {
            let a = omega.alpha(n)?;
            a.x0().add_scaled(0.1, &l2_sphere(&mut rng, dim))
        };
        let r = x.norm_l2();
        let a = omega.alpha(n)?;
        let sn = slice_norm_eval(a, &x);
        let nn = n_norm_eval(omega, n, &x)?;
        let tol = 1e-12 * r;
        let ok = r <= nn + tol
            && nn <= sn + tol
            && sn <= hi * r + tol
            && sn <= (1.0 + omega.eta(n)?) * nn + tol;
        if !ok {
            chain_violations += 1;
        }
        cutoff_worst = cutoff_worst.max((omega_norm_eval(omega, &x)? - omega_norm_exhaustive(omega, &x)?).abs());
    }
    Ok(SandwichReport {
        samples,
        chain_violations,
        cutoff_worst,
    })
}

/// Separation of the first witness pair, `‖b_1 - a_1‖` (the same for
/// every `n` in the model).
pub fn witness_separation(kind: TheoremKind, delta: f64) -> Result<f64> {
    let omega = make_model_omega(kind, delta, 8)?;
    let (a, b, _) = witness_pair(&omega, 1)?;
    Ok((&b - &a).norm_l2())
}

#[derive(Debug, Clone, Serialize)]
pub struct TrendPoint {
    pub kind: TheoremKind,
    pub truncation: usize,
    pub probe: String,
    pub separation: f64,
    pub value: f64,
}

/// Which rotundity modulus a trend point estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrendProbe {
    /// Pairs with `y - x = t e_i`.
    Direction(usize),
    /// Pairs with `‖x - y‖ >= t`.
    Unconstrained,
    /// Pairs with `|<e_i*, x - y>| >= t`.
    Functional(usize),
}

impl TrendProbe {
    fn label(self) -> String {
        match self {
            TrendProbe::Direction(i) => format!("direction e{i}"),
            TrendProbe::Unconstrained => "unconstrained".into(),
            TrendProbe::Functional(i) => format!("functional e{i}*"),
        }
    }
}

/// One probe value per truncation in `truncations`.
pub fn truncation_trend(
    kind: TheoremKind,
    delta: f64,
    truncations: &[usize],
    probe: TrendProbe,
    t: f64,
    cfg: &ToleranceConfig,
) -> Result<Vec<TrendPoint>> {
    truncations
        .iter()
        .map(|&n| {
            let omega = make_model_omega(kind, delta, n)?;
            let norm = omega_norm_oracle(&omega);
            let constraint = match probe {
                TrendProbe::Direction(i) => ProbeConstraint::Direction(CoordVector::basis(n, i)),
                TrendProbe::Unconstrained => ProbeConstraint::None,
                TrendProbe::Functional(i) => ProbeConstraint::Functional(CoordFunctional::basis(n, i)),
            };
            let est = midpoint_sup_probe(&norm, t, &constraint, n, cfg)?;
            Ok(TrendPoint {
                kind,
                truncation: n,
                probe: probe.label(),
                separation: t,
                value: est.value,
            })
        })
        .collect()
}

/// Direction-constrained probes along `count` random unit directions of
/// `R^n`, drawn from a dedicated stream of `cfg`.
pub fn random_direction_probes(
    kind: TheoremKind,
    delta: f64,
    n: usize,
    count: usize,
    t: f64,
    cfg: &ToleranceConfig,
) -> Result<Vec<TrendPoint>> {
    let omega = make_model_omega(kind, delta, n)?;
    let norm = omega_norm_oracle(&omega);
    let mut rng = cfg.rng(0xd1);
    (0..count)
        .map(|k| {
            let v = l2_sphere(&mut rng, n);
            let est = midpoint_sup_probe(&norm, t, &ProbeConstraint::Direction(v), n, cfg)?;
            Ok(TrendPoint {
                kind,
                truncation: n,
                probe: format!("random direction {k}"),
                separation: t,
                value: est.value,
            })
        })
        .collect()
}
