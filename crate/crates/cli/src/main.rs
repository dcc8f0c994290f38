use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use renorm_cli::{run_and_write, Scenario, ScenarioConfig};

/// Run a renorming scenario and write report.jsonl, summary.txt,
/// tables/*.csv and figures/*.svg.
#[derive(Parser, Debug)]
#[command(name = "renorm", version)]
struct Args {
    /// TOML config file; flags below override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    scenario: Option<Scenario>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    truncation: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

fn build_config(args: &Args) -> renorm_cli::Result<ScenarioConfig> {
    let mut cfg = match &args.config {
        Some(p) => ScenarioConfig::from_file(p)?,
        None => ScenarioConfig::default(),
    };
    if let Some(s) = args.scenario {
        cfg.scenario = s;
    }
    if args.delta.is_some() {
        cfg.delta = args.delta;
    }
    if args.truncation.is_some() {
        cfg.truncation = args.truncation;
    }
    if args.n_max.is_some() {
        cfg.n_max = args.n_max;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(d) = &args.out_dir {
        cfg.out_dir = d.clone();
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = build_config(&args).and_then(|cfg| run_and_write(&cfg).map(|r| (cfg, r)));
    match result {
        Ok((cfg, report)) => {
            let failed: Vec<_> = report.failed().collect();
            println!(
                "{}: {} checks, {} failed; output in {}",
                cfg.scenario.name(),
                report.records.len(),
                failed.len(),
                cfg.out_dir.display()
            );
            for r in &failed {
                eprintln!("FAILED {} value={:e} bound={:?}", r.name, r.value, r.bound);
            }
            for e in &report.errors {
                eprintln!("ERROR {e}");
            }
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
