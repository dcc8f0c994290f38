//! Scenario runner for the renorming constructions: configuration,
//! embedded checks and report files.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod report;
pub mod scenario;
pub mod svg;

pub use config::{Resolved, Scenario, ScenarioConfig};
pub use error::{CliError, Result};
pub use report::{Record, Report};
pub use scenario::run_scenario;

/// Resolves, runs and writes one scenario. Returns the report so callers
/// can inspect failures.
pub fn run_and_write(cfg: &ScenarioConfig) -> Result<Report> {
    let resolved = cfg.resolve()?;
    let report = run_scenario(&resolved)?;
    let title = format!(
        "scenario {} (delta = {}, truncation = {}, n_max = {}, seed = {})",
        resolved.scenario.name(),
        resolved.delta,
        resolved.truncation,
        resolved.n_max,
        resolved.tolerances.rng_seed
    );
    report.write(&resolved.out_dir, &title)?;
    Ok(report)
}
