//! Smooth approximation of a polyhedral norm by an even `ℓp` aggregate.

use serde::Serialize;

use crate::coord::{CoordFunctional, CoordVector};
use crate::error::{invalid, Result};

/// `agg(x) = m (Σ_j (|<u_j, x>| / m)^p)^{1/p}`, `m = max_j |<u_j, x>|`.
///
/// Unstabilised this is the `p`-th root of a polynomial, smooth away from
/// `0`. With `J` functionals, `max <= agg <= J^{1/p} max <= (1+η) max`.
#[derive(Debug, Clone, Serialize)]
pub struct SmoothAggNorm {
    dim: usize,
    count: usize,
    #[serde(skip)]
    rows: Vec<f64>,
    p: u32,
    eta: f64,
}

/// Smallest even `p >= 2` with `J^{1/p} <= 1 + η`.
pub fn exponent_for(count: usize, eta: f64) -> u32 {
    let j = count as f64;
    let mut p = ((j.ln() / eta.ln_1p()).ceil() as u32).max(2);
    p += p % 2;
    while j.powf(1.0 / p as f64) > 1.0 + eta {
        p += 2;
    }
    p
}

impl SmoothAggNorm {
    pub fn new(list: &[CoordFunctional], eta: f64) -> Result<Self> {
        if list.is_empty() {
            return Err(invalid("smooth aggregate needs a nonempty functional list"));
        }
        if !(eta > 0.0) {
            return Err(invalid(format!("eta must be positive, got {eta}")));
        }
        let dim = list.iter().map(|u| u.dim()).max().unwrap_or(0);
        let mut rows = Vec::with_capacity(dim * list.len());
        for u in list {
            rows.extend((1..=dim).map(|i| u.get(i)));
        }
        Ok(Self {
            dim,
            count: list.len(),
            rows,
            p: exponent_for(list.len(), eta),
            eta,
        })
    }

    pub fn exponent(&self) -> u32 {
        self.p
    }
    pub fn len(&self) -> usize {
        self.count
    }
    pub fn is_empty(&self) -> bool {
        self.count == 0
    }
    pub fn eta(&self) -> f64 {
        self.eta
    }
    pub fn dim(&self) -> usize {
        self.dim
    }

    fn pairings(&self, x: &CoordVector) -> Vec<f64> {
        let xs: Vec<f64> = (1..=self.dim).map(|i| x.get(i)).collect();
        self.rows
            .chunks_exact(self.dim)
            .map(|r| r.iter().zip(&xs).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// The polyhedral norm being approximated.
    pub fn max_eval(&self, x: &CoordVector) -> f64 {
        self.pairings(x).iter().fold(0.0, |m, l| m.max(l.abs()))
    }

    pub fn eval(&self, x: &CoordVector) -> f64 {
        let l = self.pairings(x);
        let m = l.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if m == 0.0 {
            return 0.0;
        }
        let p = self.p as i32;
        let s: f64 = l.iter().map(|v| (v.abs() / m).powi(p)).sum();
        m * s.powf(1.0 / self.p as f64)
    }

    /// `∇agg(x) = Σ_j r_j^{p-1} sign(l_j) u_j / S^{(p-1)/p}` with
    /// `r_j = |l_j| / m` and `S = Σ_j r_j^p`.
    pub fn gradient(&self, x: &CoordVector) -> Vec<f64> {
        let l = self.pairings(x);
        let m = l.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut g = vec![0.0; self.dim];
        if m == 0.0 {
            return g;
        }
        let p = self.p as i32;
        let mut s = 0.0;
        for (row, v) in self.rows.chunks_exact(self.dim).zip(&l) {
            let r = v.abs() / m;
            let rp1 = r.powi(p - 1);
            s += rp1 * r;
            let coef = rp1 * v.signum();
            if coef != 0.0 {
                g.iter_mut().zip(row).for_each(|(gi, ui)| *gi += coef * ui);
            }
        }
        let scale = s.powf((self.p as f64 - 1.0) / self.p as f64);
        g.iter_mut().for_each(|gi| *gi /= scale);
        g
    }
}
