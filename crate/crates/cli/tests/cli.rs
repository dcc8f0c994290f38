use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use renorm_cli::{run_and_write, Scenario, ScenarioConfig};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_renorm"))
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("renorm-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn invalid_delta_names_the_constraint() {
    let out = scratch("bad-delta");
    let o = bin()
        .args(["--scenario", "smooth-c0", "--delta", "0.3", "--out-dir"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("(0, 0.25]"), "{}", stderr(&o));
    assert!(!out.exists());

    let o = bin().args(["--scenario", "thmB", "--n-max", "30"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("n_max = 30"), "{}", stderr(&o));
}

#[test]
fn unknown_config_key_rejected() {
    let dir = scratch("bad-key");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("c.toml");
    std::fs::write(&cfg, "scenario = \"oracles\"\n[samples]\nconvexty = 5\n").unwrap();
    let o = bin().arg("--config").arg(&cfg).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("convexty"), "{}", stderr(&o));
}

#[test]
fn oracles_run_is_deterministic() {
    let (a, b) = (scratch("oracles-a"), scratch("oracles-b"));
    for d in [&a, &b] {
        let o = bin().args(["--scenario", "oracles", "--seed", "3", "--out-dir"]).arg(d).output().unwrap();
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let ja = read(&a.join("report.jsonl"));
    assert_eq!(ja, read(&b.join("report.jsonl")));
    assert_eq!(read(&a.join("tables/cross_validation.csv")), read(&b.join("tables/cross_validation.csv")));
    assert!(ja.lines().all(|l| l.contains(r#""pass":true"#)));
    assert!(read(&a.join("summary.txt")).contains("status: PASS"));
}

#[test]
fn small_theorem_a_run() {
    let out = scratch("thmA");
    let mut cfg = ScenarioConfig {
        scenario: Scenario::ThmA,
        truncation: Some(12),
        n_max: Some(8),
        out_dir: out.clone(),
        ..Default::default()
    };
    cfg.trend.truncations = vec![6, 12];
    cfg.trend.optimizer_budget = 300;
    cfg.samples.sandwich = 500;
    cfg.samples.coincidence = 200;
    cfg.figure.resolution = 90;
    let report = run_and_write(&cfg).unwrap();
    assert!(report.all_pass(), "{:?}", report.failed().collect::<Vec<_>>());

    let table = read(&out.join("tables/witness.csv"));
    let mut lines = table.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,lambda,norm_a,norm_b,norm_mid,separation,midpoint_floor"
    );
    let lambdas: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(lambdas.len(), 8);
    assert!(lambdas.iter().all(|l| (l - 0.886_147).abs() < 1e-6));
    let svg = read(&out.join("figures/slice_section_A.svg"));
    assert_eq!(svg.matches("<polygon").count(), 1);
}

#[test]
fn small_smooth_run() {
    let out = scratch("smooth");
    let mut cfg = ScenarioConfig {
        scenario: Scenario::SmoothC0,
        truncation: Some(4),
        out_dir: out.clone(),
        ..Default::default()
    };
    cfg.samples.sandwich = 300;
    cfg.samples.audit = 300;
    cfg.samples.gradient_points = 10;
    cfg.samples.convexity = 1000;
    cfg.samples.dual_budget = 100;
    cfg.figure.resolution = 120;
    let report = run_and_write(&cfg).unwrap();
    assert!(report.all_pass(), "{:?} {:?}", report.failed().collect::<Vec<_>>(), report.errors);
    let dual = read(&out.join("tables/dual_witness.csv"));
    let z2: Vec<&str> = dual.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(&z2[..2], ["2", "0.7 1"]);
    let one: f64 = z2[2].parse().unwrap();
    assert!((one - 1.0).abs() <= 1e-10);
    let svg = read(&out.join("figures/overlay.svg"));
    assert!(svg.contains(r#"data-label="inf,2""#) && svg.contains(r#"data-label="one,2""#));
    assert_eq!(report.get("schedule.h2").unwrap().value, 2.75);
}

#[test]
fn shipped_configs_resolve() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut seen = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let cfg = ScenarioConfig::from_file(&path).unwrap();
        let r = cfg.resolve().unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let stem = path.file_stem().unwrap().to_str().unwrap();
        assert_eq!(r.scenario.name(), stem);
        seen += 1;
    }
    assert_eq!(seen, 5);
}
