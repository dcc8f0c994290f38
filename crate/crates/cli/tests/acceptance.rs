//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use renorm_cli::scenario::{polyhedral_overlay, q_identity_residuals, run_scenario};
use renorm_cli::{Report, Scenario, ScenarioConfig};
use renorm_core::slice::slice_epsilon;
use renorm_core::smooth::{audit_schedule, build_schedule, witness_point, FAMILIES};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn run(scenario: Scenario) -> (Report, Duration) {
    let cfg = ScenarioConfig {
        scenario,
        ..Default::default()
    };
    let t = Instant::now();
    let report = run_scenario(&cfg.resolve().expect("default config is valid")).expect("scenario runs");
    (report, t.elapsed())
}

/// All records whose name starts with one of `prefixes` pass, and there is
/// at least one. Returns the failing names.
fn records_pass(reports: &[&Report], prefixes: &[&str]) -> Outcome {
    let mut seen = 0;
    let mut bad = Vec::new();
    for r in reports {
        for rec in r.records.iter().filter(|x| prefixes.iter().any(|p| x.name.starts_with(p))) {
            seen += 1;
            if !rec.pass {
                bad.push(format!("{}={:e}", rec.name, rec.value));
            }
        }
        bad.extend(r.errors.iter().filter(|e| prefixes.iter().any(|p| e.starts_with(p))).cloned());
    }
    if seen == 0 {
        return outcome(false, format!("no records under {prefixes:?}"));
    }
    outcome(bad.is_empty(), format!("{seen} checks{}", if bad.is_empty() { String::new() } else { format!(", failed: {}", bad.join(", ")) }))
}

fn value(r: &Report, name: &str) -> f64 {
    r.get(name).map_or(f64::NAN, |x| x.value)
}

fn within(elapsed: Duration, secs: u64, o: Outcome) -> Outcome {
    let ok = elapsed <= Duration::from_secs(secs);
    outcome(o.pass && ok, format!("{}; {:.1}s of {secs}s", o.detail, elapsed.as_secs_f64()))
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let (lin, hil) = q_identity_residuals(10_000, 16, 0);
    within(
        t.elapsed(),
        5,
        outcome(lin <= 1e-12 && hil <= 1e-12, format!("linearity {lin:.2e}, hilbert {hil:.2e}")),
    )
}

fn main() -> ExitCode {
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();

    results.push((1, "Q linearity and Hilbert identity", criterion_1()));

    let (a, ta) = run(Scenario::ThmA);
    let (b, tb) = run(Scenario::ThmB);
    let (c, tc) = run(Scenario::ThmC);
    let thm = [&a, &b, &c];
    let thm_time = ta + tb + tc;

    let eps = slice_epsilon(0.1, 1.1);
    let mut lemma = records_pass(&thm, &["thmA.lemma.", "thmB.lemma.", "thmC.lemma."]);
    if (eps - 0.038_901_7).abs() > 1e-7 {
        lemma = outcome(false, format!("epsilon {eps}"));
    }
    results.push((2, "single-slice lemma parts for every kind", within(thm_time, 60, lemma)));

    let witness = records_pass(&thm, &["thmA.witness.", "thmB.witness.", "thmC.witness."]);
    let rows = a.table_text("witness").map_or(0, |t| t.lines().count() - 1);
    let witness = outcome(
        witness.pass && rows == 20,
        format!("{}; kind A rows {rows}, separation {:.6}", witness.detail, value(&a, "thmA.witness.separation_min")),
    );
    results.push((3, "witness tables", within(thm_time, 60, witness)));

    let trend = records_pass(&thm, &["thmA.trend.", "thmB.trend.", "thmC.trend."]);
    let trend = outcome(
        trend.pass,
        format!(
            "{}; A final {:.9}, C final {:.9}, B max {:.4}",
            trend.detail,
            value(&a, "thmA.trend.final"),
            value(&c, "thmC.trend.final"),
            value(&b, "thmB.trend.direction_max")
        ),
    );
    results.push((4, "truncation trends", within(thm_time, 600, trend)));

    let t = Instant::now();
    let p = build_schedule(0.25, 8).expect("schedule");
    let entries = audit_schedule(&p);
    let families = FAMILIES.iter().all(|f| entries.iter().any(|e| e.family == *f));
    let min_slack = entries.iter().filter(|e| e.slack.is_finite()).fold(f64::INFINITY, |m, e| m.min(e.slack));
    let sched = outcome(
        families && entries.iter().all(|e| e.pass) && p.w(2) == 1.1 && p.h(2) == 2.75,
        format!("{} inequalities, min slack {min_slack:.2e}, w2 = {}, h2 = {}", entries.len(), p.w(2), p.h(2)),
    );
    results.push((5, "smooth schedule", within(t.elapsed(), 60, sched)));

    let (s, ts) = run(Scenario::SmoothC0);
    let sandwiches = records_pass(
        &[&s],
        &[
            "audit.polyhedral_sandwich.",
            "audit.list_recursion",
            "audit.smoothing_sandwich.",
            "audit.property_ii.",
            "audit.property_iii.",
        ],
    );
    results.push((6, "polyhedral and smooth sandwiches", within(ts, 600, sandwiches)));

    let z2 = witness_point(&p, 2);
    let z2_ok = (z2.get(1) - 0.7).abs() <= 1e-14 && z2.get(2) == 1.0;
    let dual = records_pass(&[&s], &["dual."]);
    let floor = (1.0 + p.eta(8)).powi(-2) - 1e-6;
    let mid = value(&s, "dual.mid_lower");
    let dual = outcome(
        dual.pass && z2_ok && mid >= floor,
        format!("{}; z2 = ({}, {}), mid lower {mid:.6} >= {floor:.6}", dual.detail, z2.get(1), z2.get(2)),
    );
    results.push((7, "dual witnesses", within(ts, 300, dual)));

    let (o, to) = run(Scenario::Oracles);
    let smooth = records_pass(&[&s], &["audit.gradient.", "convexity."]);
    let scans = records_pass(&[&o], &["oracles.convexity_"]);
    let smooth = outcome(smooth.pass && scans.pass, format!("{}; oracle scans {}", smooth.detail, scans.detail));
    results.push((8, "gradients and convexity scans", within(ts + to, 300, smooth)));

    let t = Instant::now();
    let cfg = ScenarioConfig {
        scenario: Scenario::SmoothC0,
        ..Default::default()
    }
    .resolve()
    .expect("valid");
    let mut fig = Report::new();
    let figure = match polyhedral_overlay(&cfg, &p, &mut fig) {
        Ok(()) => {
            let rec = records_pass(&[&fig], &["overlay."]);
            let svg = fig.figure_text("overlay").unwrap_or("");
            let dir = std::env::temp_dir().join("renorm-acceptance");
            let written = std::fs::create_dir_all(&dir).and_then(|_| std::fs::write(dir.join("overlay.svg"), svg));
            outcome(
                rec.pass && svg.matches("<polygon").count() == 4 && written.is_ok(),
                format!("{}; self-check {:.1e}", rec.detail, value(&fig, "overlay.self_check")),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    };
    results.push((9, "overlay figure", within(t.elapsed(), 10, figure)));

    let mut failed = 0;
    for (n, name, o) in &results {
        println!("{} criterion {n}: {name} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
