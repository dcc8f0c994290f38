//! The locally finite maximum `⟦·⟧_Ω` over a sequence of tuples, the model
//! tuples for the three counterexample constructions, and their witness
//! pairs.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::alpha::{check_support, slice_norm_eval, AlphaTuple};
use crate::config::ToleranceConfig;
use crate::coord::{CoordFunctional, CoordVector};
use crate::error::{invalid, violated, Error, Result};
use crate::norm::{NormOracle, Reference};
use crate::probe::slice_diameter_estimate;

/// Which construction the model tuples instantiate.
///
/// * `A`: LUR but not URED (segments along the fixed direction `e1`).
/// * `B`: not WUR (segments along `e_{2n+2} + e1`, seen by `ψ0 = e1`).
/// * `C`: WUR but not UR (segments along the weakly null `e_{2n+1}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremKind {
    A,
    B,
    C,
}

impl TheoremKind {
    pub fn name(self) -> &'static str {
        match self {
            TheoremKind::A => "A",
            TheoremKind::B => "B",
            TheoremKind::C => "C",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OmegaConfig {
    kind: TheoremKind,
    delta: f64,
    c: f64,
    witness_c: f64,
    truncation: usize,
    alphas: Vec<AlphaTuple>,
    etas: Vec<f64>,
    /// Sparse `f_n`, used by the cutoff and candidate scans.
    f_entries: Vec<Vec<(usize, f64)>>,
}

impl OmegaConfig {
    /// Validates the family: each tuple, shared `δ` and `C`, strictly
    /// decreasing positive `η_n`, and `|<f_m, x_n>| < 2(1-δ)⁴ - 1` off the
    /// diagonal.
    pub fn new(
        kind: TheoremKind,
        alphas: Vec<AlphaTuple>,
        etas: Vec<f64>,
        witness_c: f64,
        truncation: usize,
    ) -> Result<Self> {
        let first = alphas.first().ok_or_else(|| invalid("at least one tuple is required"))?;
        let (delta, c) = (first.delta(), first.c());
        if etas.len() != alphas.len() {
            return Err(invalid("one eta per tuple is required"));
        }
        if etas.iter().any(|e| !(*e > 0.0)) || etas.windows(2).any(|w| w[1] >= w[0]) {
            return Err(invalid("etas must be positive and strictly decreasing"));
        }
        let cross = 2.0 * (1.0 - delta).powi(4) - 1.0;
        for (m, am) in alphas.iter().enumerate() {
            if am.delta() != delta || am.c() != c {
                return Err(invalid(format!("tuple {} has different (delta, C)", m + 1)));
            }
            for v in [am.x0(), am.h0()] {
                check_support(v, truncation)?;
            }
            for (n, an) in alphas.iter().enumerate() {
                if m != n && am.f0().pair(an.x0()).abs() >= cross {
                    return Err(invalid(format!(
                        "|<f_{}, x_{}>| = {} is not below 2(1-delta)^4 - 1 = {cross}",
                        m + 1,
                        n + 1,
                        am.f0().pair(an.x0()).abs()
                    )));
                }
            }
        }
        let f_entries = alphas.iter().map(|a| a.f0().coords().entries().collect()).collect();
        Ok(Self {
            kind,
            delta,
            c,
            witness_c,
            truncation,
            alphas,
            etas,
            f_entries,
        })
    }

    pub fn kind(&self) -> TheoremKind {
        self.kind
    }
    pub fn delta(&self) -> f64 {
        self.delta
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    /// The constant `C'` in the witness pairs `λ x_n ∓ (1-λ)/C' h_n`.
    pub fn witness_c(&self) -> f64 {
        self.witness_c
    }
    pub fn truncation(&self) -> usize {
        self.truncation
    }
    pub fn n_max(&self) -> usize {
        self.alphas.len()
    }
    pub fn alphas(&self) -> &[AlphaTuple] {
        &self.alphas
    }

    pub fn alpha(&self, n: usize) -> Result<&AlphaTuple> {
        self.check_index(n)?;
        Ok(&self.alphas[n - 1])
    }

    pub fn eta(&self, n: usize) -> Result<f64> {
        self.check_index(n)?;
        Ok(self.etas[n - 1])
    }

    /// `τ_n = ((1+η_n)² - 1) / (1+η_n)²`.
    pub fn tau(&self, n: usize) -> Result<f64> {
        Ok(tau_of(self.eta(n)?))
    }

    /// The functional `ψ0 = e1` that sees the kind-B segments.
    pub fn psi0(&self) -> CoordFunctional {
        CoordFunctional::basis(self.truncation, 1)
    }

    fn check_index(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.alphas.len() {
            return Err(Error::IndexOutOfRange {
                index: n,
                max: self.alphas.len(),
            });
        }
        Ok(())
    }

    fn f_pair(&self, m: usize, x: &CoordVector) -> f64 {
        self.f_entries[m].iter().map(|&(i, v)| v * x.get(i)).sum()
    }

    /// Certified cutoff `n_x`: `<f_m, x> = 0` for every `m >= n_x`.
    pub fn cutoff(&self, x: &CoordVector) -> usize {
        (0..self.alphas.len())
            .rev()
            .find(|&m| self.f_pair(m, x) != 0.0)
            .map_or(1, |m| m + 2)
    }
}

fn tau_of(eta: f64) -> f64 {
    let s = (1.0 + eta).powi(2);
    (s - 1.0) / s
}

fn n_norm_unchecked(omega: &OmegaConfig, m: usize, x: &CoordVector) -> f64 {
    let eta = omega.etas[m];
    let s = slice_norm_eval(&omega.alphas[m], x);
    (s * s / (1.0 + eta).powi(2) + tau_of(eta) * x.dot(x)).sqrt()
}

/// `⟦x⟧_n = (⟦x⟧²_{α_n,δ,C} / (1+η_n)² + τ_n ‖x‖²)^{1/2}`.
pub fn n_norm_eval(omega: &OmegaConfig, n: usize, x: &CoordVector) -> Result<f64> {
    omega.check_index(n)?;
    Ok(n_norm_unchecked(omega, n - 1, x))
}

/// `⟦x⟧_Ω = max{‖x‖, max_n ⟦x⟧_n}`.
///
/// Only indices with `|<f_n, x>| > (1-δ)² ‖x‖` are evaluated: for the
/// others `⟦x⟧_{α_n} = ‖x‖` and hence `⟦x⟧_n <= ‖x‖`.
pub fn omega_norm_eval(omega: &OmegaConfig, x: &CoordVector) -> Result<f64> {
    check_support(x, omega.truncation)?;
    Ok(omega_unchecked(omega, x))
}

fn omega_unchecked(omega: &OmegaConfig, x: &CoordVector) -> f64 {
    let base = x.norm_l2();
    let threshold = (1.0 - omega.delta).powi(2) * base;
    let mut best = base;
    for m in 0..omega.alphas.len() {
        if omega.f_pair(m, x).abs() > threshold {
            best = best.max(n_norm_unchecked(omega, m, x));
        }
    }
    best
}

/// `⟦·⟧_Ω` evaluated over every index below the certified cutoff.
pub fn omega_norm_exhaustive(omega: &OmegaConfig, x: &CoordVector) -> Result<f64> {
    check_support(x, omega.truncation)?;
    let cut = omega.cutoff(x).min(omega.n_max() + 1);
    Ok((0..cut - 1).fold(x.norm_l2(), |m, k| m.max(n_norm_unchecked(omega, k, x))))
}

/// `⟦·⟧_Ω` as a [`NormOracle`] with constants `(1, 1/(1-δ)²)` against `ℓ2`.
pub fn omega_norm_oracle(omega: &OmegaConfig) -> NormOracle {
    let o = omega.clone();
    let hi = 1.0 / (1.0 - omega.delta).powi(2);
    NormOracle::new(
        format!("omega-{}", omega.kind.name()),
        omega.truncation,
        Reference::L2,
        (1.0, hi),
        move |x| omega_unchecked(&o, x),
    )
    .expect("valid constants")
}

/// Largest tuple index the kind fits into a truncation of size `n`.
pub fn model_capacity(kind: TheoremKind, n: usize) -> usize {
    match kind {
        TheoremKind::A => n.saturating_sub(1),
        TheoremKind::B => n.saturating_sub(2) / 2,
        TheoremKind::C => n.saturating_sub(1) / 2,
    }
}

/// The model tuples in the `ℓ2` truncation `R^n` with canonical, exactly
/// biorthogonal data (all cross pairings vanish) and `η_n = 2^{-n}`.
pub fn make_model_omega(kind: TheoremKind, delta: f64, n: usize) -> Result<OmegaConfig> {
    if !(delta > 0.0 && (1.0 - delta).powi(4) > 0.5) {
        return Err(invalid(format!("delta = {delta} must satisfy 0 < delta and (1-delta)^4 > 1/2")));
    }
    if n < 4 {
        return Err(invalid(format!("truncation must be at least 4, got {n}")));
    }
    let e = |i| CoordVector::basis(n, i);
    let f = |i| CoordFunctional::basis(n, i);
    let count = model_capacity(kind, n);
    let (c, witness_c) = match kind {
        TheoremKind::A => (1.0 + delta, 1.0 + delta),
        TheoremKind::B => (2.0 * (1.0 + delta), 2.0 * (1.0 + delta)),
        TheoremKind::C => (1.0 + delta, 2.0 * (1.0 + delta)),
    };
    let (psi0, v0) = (f(1), e(1));
    let alphas = (1..=count)
        .map(|k| {
            let (x, h, fk, gk) = match kind {
                TheoremKind::A => (e(k + 1), e(1), f(k + 1), f(1)),
                TheoremKind::B => (
                    e(2 * k + 1),
                    e(2 * k + 2).add_scaled(1.0, &v0),
                    f(2 * k + 1).compose_projection(&psi0, &v0),
                    f(2 * k + 2).compose_projection(&psi0, &v0),
                ),
                TheoremKind::C => (e(2 * k), e(2 * k + 1), f(2 * k), f(2 * k + 1)),
            };
            AlphaTuple::new(x, h, fk, gk, delta, c)
        })
        .collect::<Result<Vec<_>>>()?;
    let etas = (1..=count).map(|k| 0.5f64.powi(k as i32)).collect();
    let omega = OmegaConfig::new(kind, alphas, etas, witness_c, n)?;
    if kind == TheoremKind::C {
        kind_c_certificate(&omega)?;
    }
    Ok(omega)
}

/// Kind C needs at most one `n` with `|<f_n, x>| > (1-δ)³ ‖x‖`. The model
/// `f_n` are orthonormal, so by Bessel two such indices would force
/// `2 (1-δ)⁶ <= 1`.
fn kind_c_certificate(omega: &OmegaConfig) -> Result<()> {
    let r = (1.0 - omega.delta).powi(3);
    if 2.0 * r * r <= 1.0 {
        return Err(violated(format!("2 (1-delta)^6 = {} must exceed 1", 2.0 * r * r)));
    }
    for (m, a) in omega.alphas.iter().enumerate() {
        for b in &omega.alphas[m + 1..] {
            let ip = a.f0().coords().dot(b.f0().coords());
            if ip != 0.0 || (a.f0().norm_l2() - 1.0).abs() > 1e-15 {
                return Err(violated("model functionals are not orthonormal"));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct SliceDiameterReport {
    pub level: f64,
    pub diameter_lower: f64,
    /// Bound the general argument asks for.
    pub target: f64,
    /// `2 (1-δ)⁶ > 1`, which replaces the diameter bound in the model.
    pub disjointness_margin: f64,
}

/// Estimated diameter of `{‖x‖ <= 1, <f_1, x> >= (1-δ)³}` in a section of
/// dimension `dim`, reported next to the direct disjointness certificate.
pub fn kind_c_slice_report(omega: &OmegaConfig, dim: usize, cfg: &ToleranceConfig) -> Result<SliceDiameterReport> {
    let level = (1.0 - omega.delta).powi(3);
    let f1 = omega.alpha(1)?.f0().clone();
    let diameter_lower = slice_diameter_estimate(&NormOracle::l2(omega.truncation), &f1, level, dim, cfg)?;
    Ok(SliceDiameterReport {
        level,
        diameter_lower,
        target: 0.25,
        disjointness_margin: 2.0 * level * level - 1.0,
    })
}

/// `λ_n = 1 / ⟦x_n⟧_{α_n,δ,C}` and the pair `λ_n x_n ∓ (1-λ_n)/C' h_n`.
pub fn witness_pair(omega: &OmegaConfig, n: usize) -> Result<(CoordVector, CoordVector, f64)> {
    let a = omega.alpha(n)?;
    let lambda = 1.0 / slice_norm_eval(a, a.x0());
    let mid = a.x0().scaled(lambda);
    let s = (1.0 - lambda) / omega.witness_c;
    Ok((mid.add_scaled(-s, a.h0()), mid.add_scaled(s, a.h0()), lambda))
}

#[derive(Debug, Clone, Serialize)]
pub struct FailureRow {
    pub n: usize,
    pub lambda: f64,
    pub norm_a: f64,
    pub norm_b: f64,
    pub norm_mid: f64,
    /// `‖b - a‖` for kinds A and C, `|<ψ0, b - a>|` for kind B.
    pub separation: f64,
    /// `1 / (1 + η_n)`.
    pub midpoint_floor: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FailureReport {
    pub kind: TheoremKind,
    pub delta: f64,
    pub truncation: usize,
    pub rows: Vec<FailureRow>,
}

/// Witness norms, separations and `λ_n` for `n = 1..=n_max`. Fails if a
/// witness leaves the unit ball, a midpoint falls below `1/(1+η_n)`, or the
/// midpoint norms are not nondecreasing in `n`.
pub fn failure_report(omega: &OmegaConfig, n_max: usize) -> Result<FailureReport> {
    if n_max == 0 || n_max > omega.n_max() {
        return Err(Error::IndexOutOfRange {
            index: n_max,
            max: omega.n_max(),
        });
    }
    let psi0 = omega.psi0();
    let rows = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let (a, b, lambda) = witness_pair(omega, n)?;
            let diff = b.add_scaled(-1.0, &a);
            let separation = match omega.kind {
                TheoremKind::B => psi0.pair(&diff).abs(),
                _ => diff.norm_l2(),
            };
            let mid = a.add_scaled(1.0, &b).scaled(0.5);
            Ok(FailureRow {
                n,
                lambda,
                norm_a: omega_norm_eval(omega, &a)?,
                norm_b: omega_norm_eval(omega, &b)?,
                norm_mid: omega_norm_eval(omega, &mid)?,
                separation,
                midpoint_floor: 1.0 / (1.0 + omega.etas[n - 1]),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    for r in &rows {
        if r.norm_a.max(r.norm_b).max(r.norm_mid) > 1.0 + 1e-9 {
            return Err(violated(format!("witness {} leaves the unit ball", r.n)));
        }
        if r.norm_mid < r.midpoint_floor - 1e-12 {
            return Err(violated(format!(
                "midpoint norm {} below 1/(1+eta_{}) = {}",
                r.norm_mid, r.n, r.midpoint_floor
            )));
        }
    }
    if rows.windows(2).any(|w| w[1].norm_mid < w[0].norm_mid - 1e-12) {
        return Err(violated("midpoint norms are not nondecreasing in n"));
    }
    Ok(FailureReport {
        kind: omega.kind,
        delta: omega.delta,
        truncation: omega.truncation,
        rows,
    })
}
