//! Parameter schedule `(ε_n, c_n, w_n, h_n, η_n)` for the smooth `c0` norm.

use serde::Serialize;

use crate::error::{invalid, violated, Result};

/// Deterministic parameters up to depth `N`.
///
/// `ε_n = 2^{-(n-1)}`, `c_n = Σ_{j<=n} ε_j`, `w_n = 1 + min((U_n - 1)/2, 2^{-n})`
/// with `U_n` the upper end of the admissible interval, `h_n = w_n δ/(w_n - 1)`,
/// and `η_n` at 90% of the largest value meeting both `η` inequalities,
/// capped so that `Π (1+η_n)² <= 1/δ`. `w` and `h` are also built at
/// `N + 1`, which the second `η` inequality at `n = N` refers to.
#[derive(Debug, Clone, Serialize)]
pub struct ParamSchedule {
    delta: f64,
    depth: usize,
    // Indexed by n; entries below the first valid index are unused.
    eps: Vec<f64>,
    c: Vec<f64>,
    w: Vec<f64>,
    h: Vec<f64>,
    upper: Vec<f64>,
    eta: Vec<f64>,
}

impl ParamSchedule {
    pub fn delta(&self) -> f64 {
        self.delta
    }
    pub fn depth(&self) -> usize {
        self.depth
    }
    pub fn eps(&self, n: usize) -> f64 {
        assert!((1..=self.depth).contains(&n), "eps index {n}");
        self.eps[n]
    }
    pub fn c(&self, n: usize) -> f64 {
        assert!((1..=self.depth).contains(&n), "c index {n}");
        self.c[n]
    }
    pub fn w(&self, n: usize) -> f64 {
        assert!((2..=self.depth + 1).contains(&n), "w index {n}");
        self.w[n]
    }
    pub fn h(&self, n: usize) -> f64 {
        assert!((2..=self.depth + 1).contains(&n), "h index {n}");
        self.h[n]
    }
    /// Upper end `(1 - δ c_{n-1}) / (1 - δ c_{n-1} - δ ε_n)` of the `w_n` interval.
    pub fn w_upper(&self, n: usize) -> f64 {
        assert!((2..=self.depth + 1).contains(&n), "w index {n}");
        self.upper[n]
    }
    pub fn eta(&self, n: usize) -> f64 {
        assert!((2..=self.depth).contains(&n), "eta index {n}");
        self.eta[n]
    }
    /// `Π_{j=from}^{to} 1/w_j` (empty products are 1).
    pub fn inv_w_product(&self, from: usize, to: usize) -> f64 {
        (from..=to).map(|j| 1.0 / self.w(j)).product()
    }
    /// `Π_{j=2}^{n} (1+η_j)²`.
    pub fn eta_product(&self, n: usize) -> f64 {
        (2..=n).map(|j| (1.0 + self.eta(j)).powi(2)).product()
    }
    /// `(h_n - 1)/(h_n - δ)`, the contraction in the witness recursion.
    pub fn z_ratio(&self, n: usize) -> f64 {
        let h = self.h(n);
        (h - 1.0) / (h - self.delta)
    }
}

fn eps_at(n: usize) -> f64 {
    0.5f64.powi(n as i32 - 1)
}

/// Builds and audits the schedule for `0 < δ <= 1/4`, `N >= 2`.
pub fn build_schedule(delta: f64, depth: usize) -> Result<ParamSchedule> {
    if !(delta > 0.0 && delta <= 0.25) {
        return Err(invalid(format!("delta must lie in (0, 1/4], got {delta}")));
    }
    if depth < 2 {
        return Err(invalid(format!("depth must be at least 2, got {depth}")));
    }
    let top = depth + 1;
    let mut eps = vec![f64::NAN; top + 1];
    let mut c = vec![f64::NAN; top + 1];
    let mut w = vec![f64::NAN; top + 1];
    let mut h = vec![f64::NAN; top + 1];
    let mut upper = vec![f64::NAN; top + 1];
    let mut eta = vec![f64::NAN; top + 1];
    let mut sum = 0.0;
    for n in 1..=top {
        eps[n] = eps_at(n);
        sum += eps[n];
        c[n] = sum;
    }
    for n in 2..=top {
        let base = 1.0 - delta * c[n - 1];
        let gap = base - delta * eps[n];
        upper[n] = base / gap;
        // w_n - 1 and h_n = δ + δ/(w_n - 1), formed without cancellation so
        // that w_2 = 1.1 and h_2 = 2.75 come out exact at δ = 1/4.
        let excess = (delta * eps[n] / gap / 2.0).min(0.5f64.powi(n as i32));
        w[n] = 1.0 + excess;
        h[n] = delta + delta / excess;
    }
    for n in 2..=depth {
        let first = 1.0 / (1.0 / w[n] + delta / (2.0 * h[n]));
        let second = (h[n + 1] - delta) / (h[n + 1] - 1.0);
        let eta_max = first.min(second).sqrt() - 1.0;
        let product_cap = delta.powf(-(0.5f64.powi(n as i32 - 1))).sqrt() - 1.0;
        let half_cap = 2.0 / delta - 1.0;
        eta[n] = (0.9 * eta_max).min(product_cap).min(half_cap);
    }
    let schedule = ParamSchedule {
        delta,
        depth,
        eps,
        c,
        w,
        h,
        upper,
        eta,
    };
    let audit = audit_schedule(&schedule);
    if let Some(bad) = audit.iter().find(|a| !a.pass) {
        return Err(violated(format!(
            "schedule inequality failed: {} at n = {} (lhs {}, rhs {})",
            bad.family, bad.n, bad.lhs, bad.rhs
        )));
    }
    Ok(schedule)
}

/// One audited inequality `lhs <= rhs` (or identity `lhs = rhs`).
#[derive(Debug, Clone, Serialize)]
pub struct AuditEntry {
    pub family: &'static str,
    pub n: usize,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`, or minus the residual for identities.
    pub slack: f64,
    pub pass: bool,
}

fn le(family: &'static str, n: usize, lhs: f64, rhs: f64) -> AuditEntry {
    AuditEntry {
        family,
        n,
        lhs,
        rhs,
        slack: rhs - lhs,
        pass: lhs <= rhs,
    }
}

fn lt(family: &'static str, n: usize, lhs: f64, rhs: f64) -> AuditEntry {
    AuditEntry {
        pass: lhs < rhs,
        ..le(family, n, lhs, rhs)
    }
}

fn eq(family: &'static str, n: usize, lhs: f64, rhs: f64, tol: f64) -> AuditEntry {
    let r = (lhs - rhs).abs();
    AuditEntry {
        family,
        n,
        lhs,
        rhs,
        slack: -r,
        pass: r <= tol,
    }
}

pub const FAMILIES: [&str; 8] = [
    "eps-sum",
    "c-partial-sums",
    "w-interval",
    "h-closed-form",
    "tails",
    "eta-first",
    "eta-second",
    "eta-caps",
];

/// Every schedule inequality with its slack, grouped in the eight families
/// listed in [`FAMILIES`].
pub fn audit_schedule(s: &ParamSchedule) -> Vec<AuditEntry> {
    let d = s.delta;
    let n_max = s.depth;
    let mut out = Vec::new();

    out.push(eq(FAMILIES[0], 1, s.eps[1], 1.0, 0.0));
    out.push(le(FAMILIES[0], n_max, s.c[n_max], 1.0 / d));
    // The full series sums to 2.
    out.push(le(FAMILIES[0], 0, 2.0, 1.0 / d));
    for n in 1..=n_max {
        let direct: f64 = (1..=n).map(|j| s.eps[j]).sum();
        out.push(eq(FAMILIES[1], n, s.c[n], direct, 1e-15));
    }
    for n in 2..=n_max + 1 {
        out.push(lt(FAMILIES[2], n, 1.0, s.w[n]));
        out.push(lt(FAMILIES[2], n, s.w[n], s.upper[n]));
    }
    for n in 2..=n_max + 1 {
        // Forming w - 1 loses about eps/(w - 1) relative accuracy.
        let excess = s.w[n] - 1.0;
        let closed = s.w[n] * d / excess;
        out.push(eq(FAMILIES[3], n, s.h[n], closed, 8.0 * f64::EPSILON / excess * closed));
        out.push(lt(FAMILIES[3], n, 1.0, s.h[n]));
    }
    // w_n - 1 <= 2^{-n} bounds both tails geometrically:
    // Π_{j>N} w_j <= exp(2^{-N}) and Σ_{j>N} 1/h_j <= 2^{-N}/δ.
    for n in 2..=n_max + 1 {
        out.push(le(FAMILIES[4], n, s.w[n] - 1.0, 0.5f64.powi(n as i32)));
    }
    let prod: f64 = (2..=n_max).map(|j| s.w[j]).product();
    let tail_w = (0.5f64.powi(n_max as i32)).exp();
    out.push(le(FAMILIES[4], n_max, prod * tail_w, (0.5f64).exp()));
    let sum_h: f64 = (2..=n_max).map(|j| 1.0 / s.h[j]).sum();
    out.push(le(FAMILIES[4], n_max, sum_h + 0.5f64.powi(n_max as i32) / d, 0.5 / d));
    for n in 2..=n_max {
        let e2 = (1.0 + s.eta[n]).powi(2);
        out.push(lt(FAMILIES[5], n, 0.0, s.eta[n]));
        out.push(le(FAMILIES[5], n, e2 * (1.0 / s.w[n] + d / (2.0 * s.h[n])), 1.0));
        out.push(le(FAMILIES[6], n, e2 * (s.h[n + 1] - 1.0) / (s.h[n + 1] - d), 1.0));
        out.push(le(FAMILIES[7], n, d / 2.0, 1.0 / (1.0 + s.eta[n])));
        out.push(le(FAMILIES[7], n, e2, d.powf(-(0.5f64.powi(n as i32 - 1)))));
    }
    // Truncated product; the per-index caps bound the infinite one by 1/δ.
    out.push(le(FAMILIES[7], n_max, s.eta_product(n_max), 1.0 / d));
    out
}
