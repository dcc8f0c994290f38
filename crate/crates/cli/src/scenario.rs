//! The five scenarios. Each fills a [`Report`] with records, tables and
//! figures; nothing here touches the file system.

use std::sync::Arc;

use renorm_core::config::seeded_rng;
use renorm_core::norm::q_functional_raw;
use renorm_core::oracle::{
    convexity_midpoint_scan, dual_by_sphere_scan, gauge_by_ray_scan, hilbert_q_oracle, ScanGrid, MIN_RAY_STEPS,
};
use renorm_core::sampling::{gaussian, uniform_cube};
use renorm_core::slice::*;
use renorm_core::smooth::*;
use renorm_core::*;
use serde::Serialize;

use crate::config::{Resolved, Scenario};
use crate::error::Result;
use crate::report::Report;
use crate::svg::{render_section, square, Plane};

/// Runs the configured scenario. Check failures end up in the report; an
/// `Err` means the scenario could not run at all.
pub fn run_scenario(cfg: &Resolved) -> Result<Report> {
    let mut report = Report::new();
    match cfg.scenario {
        Scenario::ThmA | Scenario::ThmB | Scenario::ThmC => run_theorem(cfg, &mut report)?,
        Scenario::SmoothC0 => run_smooth(cfg, &mut report)?,
        Scenario::Oracles => run_oracles(cfg, &mut report)?,
    }
    Ok(report)
}

// ---------------------------------------------------------------- thm A/B/C

#[derive(Serialize)]
struct LemmaCsv {
    n: usize,
    lambda: f64,
    lambda_lo: f64,
    lambda_hi: f64,
    segment_worst: f64,
}

#[derive(Serialize)]
struct TrendCsv<'a> {
    kind: &'a str,
    truncation: usize,
    probe: &'a str,
    separation: f64,
    value: f64,
}

fn trend_rows(points: &[TrendPoint]) -> Vec<TrendCsv<'_>> {
    points
        .iter()
        .map(|p| TrendCsv {
            kind: p.kind.name(),
            truncation: p.truncation,
            probe: &p.probe,
            separation: p.separation,
            value: p.value,
        })
        .collect()
}

pub fn run_theorem(cfg: &Resolved, report: &mut Report) -> Result<()> {
    let kind = cfg.scenario.kind().expect("theorem scenario");
    let k = kind.name();
    let delta = cfg.delta;
    let omega = make_model_omega(kind, delta, cfg.truncation)?;
    let tol = &cfg.tolerances;

    witness_checks(&omega, cfg.n_max, report)?;

    let lemma = lemma_audit(&omega, cfg.samples.segment_points, cfg.samples.coincidence, tol)?;
    let margin = lemma
        .rows
        .iter()
        .fold(f64::INFINITY, |m, r| m.min(r.lambda - r.lambda_lo).min(r.lambda_hi - r.lambda));
    report.ge(format!("thm{k}.lemma.lambda_interval_margin"), margin, 0.0);
    report.le(format!("thm{k}.lemma.segment_worst"), lemma.segment_worst(), 1e-9);
    report.le(format!("thm{k}.lemma.coincidence_worst"), lemma.coincidence_worst, 1e-12);
    let rows: Vec<LemmaCsv> = lemma
        .rows
        .iter()
        .map(|r| LemmaCsv {
            n: r.n,
            lambda: r.lambda,
            lambda_lo: r.lambda_lo,
            lambda_hi: r.lambda_hi,
            segment_worst: r.segment_worst,
        })
        .collect();
    report.table("lemma", &rows)?;

    let sw = sandwich_audit(&omega, cfg.samples.sandwich, tol)?;
    report.le(format!("thm{k}.sandwich.chain_violations"), sw.chain_violations as f64, 0.0);
    report.le(format!("thm{k}.sandwich.cutoff_worst"), sw.cutoff_worst, 1e-12);

    if kind == TheoremKind::C {
        let c = kind_c_slice_report(&omega, 3, tol)?;
        report.ge("thmC.slice.disjointness_margin", c.disjointness_margin, f64::MIN_POSITIVE);
        report.info("thmC.slice.diameter_lower", c.diameter_lower);
        report.table("slice_diameter", &[c])?;
    }

    trend_checks(cfg, kind, report)?;
    slice_figure(cfg, &omega, report)?;
    Ok(())
}

fn witness_checks(omega: &OmegaConfig, n_max: usize, report: &mut Report) -> Result<()> {
    let kind = omega.kind();
    let k = kind.name();
    let delta = omega.delta();
    let fr = match failure_report(omega, n_max) {
        Ok(r) => r,
        Err(e) => {
            report.fail(format!("thm{k}.witness"), e);
            return Ok(());
        }
    };
    let mut worst_norm = 0.0f64;
    let mut midpoint_margin = f64::INFINITY;
    for r in &fr.rows {
        worst_norm = worst_norm.max(r.norm_a).max(r.norm_b).max(r.norm_mid);
        midpoint_margin = midpoint_margin.min(r.norm_mid - r.midpoint_floor);
    }
    report.le(format!("thm{k}.witness.max_norm"), worst_norm, 1.0 + 1e-9);
    report.ge(format!("thm{k}.witness.midpoint_margin"), midpoint_margin, -1e-12);
    let increments = fr.rows.windows(2).fold(f64::INFINITY, |m, w| m.min(w[1].norm_mid - w[0].norm_mid));
    if increments.is_finite() {
        report.ge(format!("thm{k}.witness.midpoint_increment"), increments, -1e-12);
    }
    let first = fr.rows[0].separation;
    let min_sep = fr.rows.iter().fold(f64::INFINITY, |m, r| m.min(r.separation));
    match kind {
        TheoremKind::A | TheoremKind::C => {
            let factor = if kind == TheoremKind::A { 2.0 } else { 1.0 };
            let formula = fr.rows.iter().fold(0.0f64, |m, r| {
                m.max((r.separation - factor * (1.0 - r.lambda) / (1.0 + delta)).abs())
            });
            report.le(format!("thm{k}.witness.separation_formula"), formula, 1e-9);
            let spread = fr.rows.iter().fold(0.0f64, |m, r| m.max((r.separation - first).abs()));
            report.le(format!("thm{k}.witness.separation_spread"), spread, 1e-9);
            report.ge(format!("thm{k}.witness.separation_min"), min_sep, f64::MIN_POSITIVE);
        }
        TheoremKind::B => {
            let eps = slice_epsilon(delta, omega.c());
            let floor = (1.0 - (1.0 + eps).powf(-0.5)) / (1.0 + delta) - 1e-9;
            report.ge("thmB.witness.psi0_separation_min", min_sep, floor);
        }
    }
    report.table("witness", &fr.rows)?;
    Ok(())
}

fn trend_checks(cfg: &Resolved, kind: TheoremKind, report: &mut Report) -> Result<()> {
    let tcfg = cfg.trend_tolerances();
    let t = &cfg.trend;
    let target = 1.0 - t.threshold;
    let k = kind.name();
    let points = match kind {
        TheoremKind::A | TheoremKind::C => {
            let probe = if kind == TheoremKind::A {
                TrendProbe::Direction(1)
            } else {
                TrendProbe::Unconstrained
            };
            let sep = witness_separation(kind, cfg.delta)?;
            let pts = truncation_trend(kind, cfg.delta, &t.truncations, probe, sep, &tcfg)?;
            let step = pts.windows(2).fold(f64::INFINITY, |m, w| m.min(w[1].value - w[0].value));
            if step.is_finite() {
                report.push(format!("thm{k}.trend.min_increment"), step, Some(0.0), step > 0.0);
            }
            let last = pts.last().expect("nonempty truncations").value;
            report.ge(format!("thm{k}.trend.final"), last, target);
            pts
        }
        TheoremKind::B => {
            let mut pts = random_direction_probes(kind, cfg.delta, t.b_truncation, t.b_directions, t.b_separation, &tcfg)?;
            let worst = pts.iter().fold(f64::NEG_INFINITY, |m, p| m.max(p.value));
            report.le("thmB.trend.direction_max", worst, target);
            // The functional ψ0 sees every segment, so this probe tends to 1.
            let omega = make_model_omega(kind, cfg.delta, cfg.truncation)?;
            let sep = witness_pair(&omega, 1).map(|(a, b, _)| omega.psi0().pair(&(&b - &a)).abs())?;
            let f = truncation_trend(kind, cfg.delta, &t.truncations, TrendProbe::Functional(1), sep, &tcfg)?;
            for p in &f {
                report.info(format!("thmB.trend.functional.N{}", p.truncation), p.value);
            }
            pts.extend(f);
            pts
        }
    };
    report.table("trend", &trend_rows(&points))?;
    Ok(())
}

/// Section of the first slice norm through `span{x_1, h_1}`; the flat
/// segment sits at height `λ` in the `x_1` direction.
fn slice_figure(cfg: &Resolved, omega: &OmegaConfig, report: &mut Report) -> Result<()> {
    let k = omega.kind().name();
    let a = omega.alpha(1)?;
    let norm = slice_norm_oracle(a);
    let plane = Plane::new(a.x0().clone(), a.h0().clone())?;
    let r = render_section(std::slice::from_ref(&norm), &plane, cfg.figure.resolution, &[])?;
    report.le(format!("thm{k}.figure.self_check"), r.worst_self_check(), crate::svg::SELF_CHECK_TOL);
    let lambda = a.constants().lambda0;
    let half = (1.0 - lambda) / a.c();
    let mut worst = 0.0f64;
    for s in [-half, 0.0, half] {
        worst = worst.max((norm.eval(&plane.point(lambda, s)) - 1.0).abs());
    }
    report.le(format!("thm{k}.figure.flat_segment"), worst, 1e-9);
    report.figure(&format!("slice_section_{k}"), r.svg);
    Ok(())
}

// ---------------------------------------------------------------- smooth-c0

#[derive(Serialize)]
struct SchemeCsv {
    n: usize,
    eps: f64,
    c: f64,
    w: f64,
    h: f64,
    eta: f64,
    exponent: u32,
    functionals: usize,
}

#[derive(Serialize)]
struct WitnessCsv {
    n: usize,
    z: String,
    one_norm: f64,
    inf_norm: f64,
    final_norm: f64,
    final_bound: f64,
    pair_f: f64,
    pair_g: f64,
    product: f64,
    mid_lower: f64,
}

#[derive(Serialize)]
struct DualCsv {
    i: usize,
    f: f64,
    g: f64,
}

#[derive(Serialize)]
struct ConvexityCsv {
    norm: String,
    samples: usize,
    worst_violation: f64,
}

/// `"property (ii)"` -> `"property_ii"`.
fn slug(s: &str) -> String {
    s.split(|c: char| !c.is_ascii_alphanumeric())
        .filter(|w| !w.is_empty())
        .collect::<Vec<_>>()
        .join("_")
}

fn poly_oracle(p: &ParamSchedule, kind: PolyKind, n: usize) -> Result<NormOracle> {
    let q = p.clone();
    let (label, lo) = match kind {
        PolyKind::One => (format!("one,{n}"), 1.0 / p.w(n).max(p.h(n)) / p.c(n - 1)),
        PolyKind::Inf => (format!("inf,{n}"), 1.0),
    };
    Ok(NormOracle::new(label, n, Reference::LInf, (lo, p.c(n)), move |x| {
        polyhedral_eval(&q, kind, n, x).unwrap_or(f64::NAN)
    })?)
}

pub fn run_smooth(cfg: &Resolved, report: &mut Report) -> Result<()> {
    let tol = &cfg.tolerances;
    let p = build_schedule(cfg.delta, cfg.truncation)?;
    let depth = p.depth();

    let entries = audit_schedule(&p);
    for e in &entries {
        report.push(format!("schedule.{}.n{}", e.family, e.n), e.slack, Some(0.0), e.pass);
    }
    report.table("schedule_audit", &entries)?;
    report.info("schedule.w2", p.w(2));
    report.info("schedule.h2", p.h(2));

    let level = Arc::new(LevelSetNorm::new(&p)?);
    let scheme: Vec<SchemeCsv> = (2..=depth)
        .map(|n| SchemeCsv {
            n,
            eps: p.eps(n),
            c: p.c(n),
            w: p.w(n),
            h: p.h(n),
            eta: p.eta(n),
            exponent: level.agg(n).exponent(),
            functionals: level.agg(n).len(),
        })
        .collect();
    report.table("schedule", &scheme)?;

    let s = &cfg.samples;
    let mut audits = Vec::new();
    for n in 2..=depth {
        audits.push(polyhedral_sandwich_audit(&p, n, s.sandwich, tol)?);
        audits.push(list_recursion_audit(&p, n, s.audit, tol)?);
        audits.push(smoothing_sandwich_audit(&level, n, s.sandwich, tol)?);
        audits.push(property_ii_audit(&level, n, s.audit, tol)?);
        audits.push(property_iii_audit(&level, n, s.audit, tol)?);
        audits.push(gradient_audit(&level, n, s.gradient_points, tol)?);
    }
    for a in &audits {
        let name = format!("audit.{}.n{}", slug(&a.check), a.depth);
        report.push(name.clone(), a.violations as f64, Some(0.0), a.pass());
        report.info(format!("{name}.worst_excess"), a.worst_excess);
    }
    report.table("sample_audits", &audits)?;

    let mut conv = Vec::new();
    let mut norms: Vec<NormOracle> = (2..=depth).map(|n| level.level_oracle(n)).collect();
    norms.push(level.oracle());
    for (i, norm) in norms.iter().enumerate() {
        let mut rng = tol.rng(0xc0 + i as u64);
        let v = convexity_midpoint_scan(norm, s.convexity, &mut rng)?;
        report.le(format!("convexity.{}", norm.label()), v.value, 1e-9);
        conv.push(ConvexityCsv {
            norm: norm.label().to_string(),
            samples: s.convexity,
            worst_violation: v.value,
        });
    }
    report.table("convexity", &conv)?;

    dual_checks(cfg, &level, report)?;
    polyhedral_overlay(cfg, &p, report)?;
    Ok(())
}

fn dual_checks(cfg: &Resolved, level: &LevelSetNorm, report: &mut Report) -> Result<()> {
    let dcfg = ToleranceConfig {
        optimizer_budget: cfg.samples.dual_budget,
        restarts: 2,
        ..cfg.tolerances
    };
    let d = dual_witness_report(level, cfg.n_max, &dcfg)?;
    for f in &d.failures {
        report.fail("dual.check", f);
    }
    let mut one = 0.0f64;
    let mut fin = f64::INFINITY;
    let mut pair = 0.0f64;
    for r in &d.rows {
        one = one.max((r.one_norm - 1.0).abs()).max((r.inf_norm - 1.0).abs());
        fin = fin.min(r.final_bound + 1e-9 - r.final_norm);
        pair = pair.max((r.pair_f - r.product).abs()).max((r.pair_g - r.product).abs());
    }
    report.le("dual.polyhedral_unit", one, 1e-10);
    report.ge("dual.final_norm_slack", fin, 0.0);
    report.le("dual.pairing_residual", pair, 1e-10);
    report.le("dual.domination_violations", d.domination.violations as f64, 0.0);
    report.info("dual.domination_worst_excess", d.domination.worst_excess);
    report.le("dual.f_upper", d.dual_f.upper, 1.0);
    report.le("dual.g_upper", d.dual_g.upper, 1.0);
    report.info("dual.f_lower", d.dual_f.lower);
    report.info("dual.g_lower", d.dual_g.lower);
    report.ge("dual.mid_lower", d.mid_lower, d.mid_reference - 1e-6);
    let from = 4.min(d.n_max);
    let rows: Vec<_> = d.rows.iter().filter(|r| r.n >= from).collect();
    let step = rows.windows(2).fold(f64::INFINITY, |m, w| m.min(w[1].mid_lower - w[0].mid_lower));
    if step.is_finite() {
        report.push("dual.gap_shrink_min", step, Some(0.0), step > 0.0);
    }
    let table: Vec<WitnessCsv> = d
        .rows
        .iter()
        .map(|r| WitnessCsv {
            n: r.n,
            z: r.z.iter().map(|v| format!("{v}")).collect::<Vec<_>>().join(" "),
            one_norm: r.one_norm,
            inf_norm: r.inf_norm,
            final_norm: r.final_norm,
            final_bound: r.final_bound,
            pair_f: r.pair_f,
            pair_g: r.pair_g,
            product: r.product,
            mid_lower: r.mid_lower,
        })
        .collect();
    report.table("dual_witness", &table)?;
    let fg: Vec<DualCsv> = d
        .f
        .iter()
        .zip(&d.g)
        .enumerate()
        .map(|(i, (f, g))| DualCsv { i: i + 1, f: *f, g: *g })
        .collect();
    report.table("dual_functionals", &fg)?;
    Ok(())
}

/// The `⟦·⟧_{∞,2}` ball inside the `⟦·⟧_{1,2}` ball, with the unit square
/// and the `1/c_2` square as guides.
pub fn polyhedral_overlay(cfg: &Resolved, p: &ParamSchedule, report: &mut Report) -> Result<()> {
    let one = poly_oracle(p, PolyKind::One, 2)?;
    let inf = poly_oracle(p, PolyKind::Inf, 2)?;
    let c2 = p.c(2);
    let plane = Plane::new(CoordVector::basis(2, 1), CoordVector::basis(2, 2))?;
    let guides = [("unit square", square(1.0)), ("1/c_2 square", square(1.0 / c2))];
    let r = render_section(&[one, inf], &plane, cfg.figure.resolution, &guides)?;
    report.le("overlay.self_check", r.worst_self_check(), crate::svg::SELF_CHECK_TOL);
    let (ob, ib) = (&r.boundaries[0], &r.boundaries[1]);
    let m = ib.radii.len();
    let (mut nest, mut outer, mut inner) = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
    for k in 0..m {
        let a = std::f64::consts::TAU * k as f64 / m as f64;
        let sup = a.cos().abs().max(a.sin().abs());
        let ri = ib.radii[k];
        nest = nest.min(ob.radii[k] - ri);
        outer = outer.min(1.0 / sup - ri);
        inner = inner.min(ri - 1.0 / (c2 * sup));
    }
    let slack = -1e-9;
    report.ge("overlay.inf_inside_one", nest, slack);
    report.ge("overlay.inf_inside_unit_square", outer, slack);
    report.ge("overlay.inf_contains_inverse_c2_square", inner, slack);
    report.figure("overlay", r.svg);
    Ok(())
}

// ---------------------------------------------------------------- oracles

#[derive(Serialize)]
struct CrossRow {
    evaluator: String,
    oracle: String,
    samples: usize,
    worst_delta: f64,
    bound: f64,
    pass: bool,
}

struct Matrix<'a> {
    rows: Vec<CrossRow>,
    report: &'a mut Report,
}

impl Matrix<'_> {
    fn add(&mut self, evaluator: &str, oracle: &str, samples: usize, worst_delta: f64, bound: f64) {
        let pass = worst_delta <= bound;
        self.report.push(format!("oracles.{evaluator}.vs.{oracle}"), worst_delta, Some(bound), pass);
        self.rows.push(CrossRow {
            evaluator: evaluator.into(),
            oracle: oracle.into(),
            samples,
            worst_delta,
            bound,
            pass,
        });
    }
}

/// Q identities on `pairs` seeded pairs in `R^dim`: worst residual of the
/// linearity identity and of the Hilbert identity.
pub fn q_identity_residuals(pairs: usize, dim: usize, seed: u64) -> (f64, f64) {
    let mut rng = seeded_rng(seed, 0x9);
    let (l2, linf) = (NormOracle::l2(dim), NormOracle::linf(dim));
    let (a1, a2) = (0.7, 1.3);
    let m = quadratic_mean_combine(&l2, &linf, a1, a2).expect("positive weights");
    let (mut lin, mut hil) = (0.0f64, 0.0f64);
    for _ in 0..pairs {
        let x = uniform_cube(&mut rng, dim);
        let y = uniform_cube(&mut rng, dim);
        let combined = a1 * q_functional_raw(&l2, &x, &y) + a2 * q_functional_raw(&linf, &x, &y);
        lin = lin.max((q_functional_raw(&m, &x, &y) - combined).abs());
        hil = hil.max((q_functional_raw(&l2, &x, &y) - hilbert_q_oracle(&x, &y)).abs());
    }
    (lin, hil)
}

pub fn run_oracles(cfg: &Resolved, report: &mut Report) -> Result<()> {
    let tol = cfg.tolerances;
    let seed = tol.rng_seed;
    let mut mx = Matrix { rows: Vec::new(), report };

    let (lin, hil) = q_identity_residuals(10_000, 16, seed);
    mx.add("q_linearity", "weighted_q_sum", 10_000, lin, 1e-12);
    mx.add("q_functional_l2", "hilbert_q", 10_000, hil, 1e-12);

    let mut rng = seeded_rng(seed, 0x10);
    let refs = [NormOracle::l1(3), NormOracle::l2(3), NormOracle::linf(3)];
    for norm in &refs {
        let mut worst = 0.0f64;
        for _ in 0..1000 {
            let x = gaussian(&mut rng, 3);
            worst = worst.max((norm_ball_gauge(norm, &x, tol.gauge_tol)? - norm.eval(&x)).abs());
        }
        mx.add(&format!("gauge_{}", norm.label()), "norm_eval", 1000, worst, 10.0 * tol.gauge_tol);
    }

    let combined = quadratic_mean_combine(&NormOracle::l2(2), &NormOracle::linf(2), 1.0, 1.0)?;
    for norm in [NormOracle::l1(2), NormOracle::l2(2), NormOracle::linf(2), combined] {
        let mut excess = f64::NEG_INFINITY;
        for _ in 0..20 {
            let x = uniform_cube(&mut rng, 2);
            let g = norm_ball_gauge(&norm, &x, tol.gauge_tol)?;
            let t_max = 2.0 * norm.constants().1 * norm.reference_norm(&x);
            let scan = gauge_by_ray_scan(|v| norm.ball_contains(v), &x, MIN_RAY_STEPS, t_max)?;
            excess = excess.max((g - scan.value).abs() - scan.error_bound);
        }
        mx.add(&format!("gauge_{}", norm.label()), "ray_scan_minus_step", 20, excess, tol.gauge_tol);
    }

    // B̂ ∩ ker g0 in a 3-D section of the kind-A model: x0 = e2, h0 = e1.
    let alpha = AlphaTuple::new(
        CoordVector::basis(3, 2),
        CoordVector::basis(3, 1),
        CoordFunctional::basis(3, 2),
        CoordFunctional::basis(3, 1),
        0.1,
        1.1,
    )?;
    let slab = 0.81;
    let member = |v: &CoordVector| v.get(2).abs() <= slab && v.norm_l2() <= 1.0;
    let mut bhat_worst = 0.0f64;
    for y in [[0.0, 0.9, 0.3], [0.0, -0.2, 1.1], [0.0, 0.5, -0.5]] {
        let y = CoordVector::from_values(y.to_vec());
        let scan = gauge_by_ray_scan(member, &y, 40_000, 4.0)?;
        bhat_worst = bhat_worst.max((bhat_gauge(&alpha, &y, 1e-12)? - scan.value).abs());
    }
    mx.add("bhat_gauge", "ray_scan", 3, bhat_worst, 1e-3);

    let mut worst = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let y = gaussian(&mut rng, 3);
        let yk = project_alpha(&alpha, &y);
        worst.0 = worst.0.max((bhat_closed_form(&alpha, &yk) - bhat_gauge(&alpha, &yk, 1e-13)?).abs());
        worst.1 = worst.1.max((slice_norm_eval(&alpha, &y) - slice_norm_eval_by_gauge(&alpha, &y, 1e-13)?).abs());
    }
    mx.add("bhat_closed_form", "bhat_gauge", 200, worst.0, 1e-9);
    mx.add("slice_norm", "slice_norm_by_gauge", 200, worst.1, 1e-9);

    for kind in [TheoremKind::A, TheoremKind::B, TheoremKind::C] {
        let omega = make_model_omega(kind, 0.1, 12)?;
        let mut w = 0.0f64;
        for _ in 0..500 {
            let x = gaussian(&mut rng, 12);
            w = w.max((omega_norm_eval(&omega, &x)? - omega_norm_exhaustive(&omega, &x)?).abs());
        }
        mx.add(&format!("omega_{}", kind.name()), "exhaustive_max", 500, w, 1e-12);
    }

    let dcfg = ToleranceConfig {
        optimizer_budget: 2000,
        ..tol
    };
    let phis = [
        CoordFunctional::from_values(vec![1.0, 1.0]),
        CoordFunctional::from_values(vec![1.0, -1.0, 1.0]),
        CoordFunctional::from_values(vec![0.3, 2.0, -0.7]),
    ];
    for (i, phi) in phis.iter().enumerate() {
        let d = phi.dim();
        for norm in [NormOracle::l1(d), NormOracle::l2(d), NormOracle::linf(d)] {
            let b = dual_norm_bounds(&norm, phi, d, &dcfg, None)?;
            let grid = ScanGrid::covering(&norm, if d == 2 { 1025 } else { 257 })?;
            let s = dual_by_sphere_scan(&norm, phi, &grid)?;
            mx.add(&format!("dual_{}_phi{}", norm.label(), i + 1), "sphere_scan", 1, (b.lower - s.value).abs(), 1e-3);
        }
    }

    let mut bump = 0.0f64;
    for k in 1..=60 {
        let v = k as f64 * 0.025;
        bump = bump.max((bump_profile_closed(v) - bump_profile_quadrature(v)).abs());
    }
    mx.add("bump_profile_closed", "quadrature", 60, bump, 1e-12);

    let level = Arc::new(LevelSetNorm::new(&build_schedule(0.25, 5)?)?);
    let mut scans: Vec<(NormOracle, f64)> = refs.iter().map(|n| (n.clone(), 1e-12)).collect();
    scans.push((slice_norm_oracle(&alpha), 1e-9));
    for kind in [TheoremKind::A, TheoremKind::B, TheoremKind::C] {
        let omega = make_model_omega(kind, 0.1, 12)?;
        scans.push((omega_norm_oracle(&omega).with_label(format!("omega-{}", kind.name())), 1e-9));
    }
    scans.push((level.level_oracle(3), 1e-9));
    for (i, (norm, bound)) in scans.iter().enumerate() {
        let mut r = seeded_rng(seed, 0x20 + i as u64);
        let v = convexity_midpoint_scan(norm, 2000, &mut r)?;
        mx.add(&format!("convexity_{}", norm.label()), "midpoint_scan", 2000, v.value, *bound);
    }

    let rows = std::mem::take(&mut mx.rows);
    report.table("cross_validation", &rows)?;
    Ok(())
}
