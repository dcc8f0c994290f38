//! Scenario configuration: a TOML file plus command-line overrides.

use std::path::{Path, PathBuf};

use renorm_core::slice::{model_capacity, TheoremKind};
use renorm_core::smooth::DEPTH_CAP;
use renorm_core::ToleranceConfig;
use serde::{Deserialize, Serialize};

use crate::error::{io_err, CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum Scenario {
    #[serde(rename = "thmA")]
    #[value(name = "thmA")]
    ThmA,
    #[serde(rename = "thmB")]
    #[value(name = "thmB")]
    ThmB,
    #[serde(rename = "thmC")]
    #[value(name = "thmC")]
    ThmC,
    #[serde(rename = "smooth-c0")]
    #[value(name = "smooth-c0")]
    SmoothC0,
    #[serde(rename = "oracles")]
    #[value(name = "oracles")]
    Oracles,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::ThmA => "thmA",
            Scenario::ThmB => "thmB",
            Scenario::ThmC => "thmC",
            Scenario::SmoothC0 => "smooth-c0",
            Scenario::Oracles => "oracles",
        }
    }

    pub fn kind(self) -> Option<TheoremKind> {
        match self {
            Scenario::ThmA => Some(TheoremKind::A),
            Scenario::ThmB => Some(TheoremKind::B),
            Scenario::ThmC => Some(TheoremKind::C),
            _ => None,
        }
    }
}

/// Settings of the truncation-trend probes.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrendConfig {
    pub truncations: Vec<usize>,
    /// Separation for the kind-B direction probes. The witness separation
    /// is too small to see the model's weak transverse curvature.
    pub b_separation: f64,
    pub b_directions: usize,
    pub b_truncation: usize,
    pub optimizer_budget: usize,
    pub restarts: usize,
    /// Required final value of the A and C trends, and ceiling for B.
    pub threshold: f64,
}

impl Default for TrendConfig {
    fn default() -> Self {
        Self {
            truncations: vec![8, 16, 32],
            b_separation: 1.0,
            b_directions: 20,
            b_truncation: 32,
            optimizer_budget: 1500,
            restarts: 4,
            threshold: 1e-3,
        }
    }
}

/// Sample counts of the randomised audits.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SampleConfig {
    pub segment_points: usize,
    pub coincidence: usize,
    pub sandwich: usize,
    pub audit: usize,
    pub gradient_points: usize,
    pub convexity: usize,
    /// Optimizer budget of the dual-norm ascent in the smooth scenario.
    pub dual_budget: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            segment_points: 20,
            coincidence: 1000,
            sandwich: 10_000,
            audit: 10_000,
            gradient_points: 100,
            convexity: 10_000,
            dual_budget: 300,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FigureConfig {
    /// Rays per drawn boundary.
    pub resolution: usize,
}

impl Default for FigureConfig {
    fn default() -> Self {
        Self { resolution: 720 }
    }
}

/// Everything a run depends on. Unset `delta`, `truncation` and `n_max`
/// take per-scenario defaults in [`ScenarioConfig::resolve`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub delta: Option<f64>,
    pub truncation: Option<usize>,
    pub n_max: Option<usize>,
    pub seed: u64,
    pub out_dir: PathBuf,
    pub tolerances: ToleranceConfig,
    pub trend: TrendConfig,
    pub samples: SampleConfig,
    pub figure: FigureConfig,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            scenario: Scenario::Oracles,
            delta: None,
            truncation: None,
            n_max: None,
            seed: 0,
            out_dir: PathBuf::from("out"),
            tolerances: ToleranceConfig::default(),
            trend: TrendConfig::default(),
            samples: SampleConfig::default(),
            figure: FigureConfig::default(),
        }
    }
}

/// A validated configuration with every default filled in.
#[derive(Debug, Clone, Serialize)]
pub struct Resolved {
    pub scenario: Scenario,
    pub delta: f64,
    pub truncation: usize,
    pub n_max: usize,
    pub out_dir: PathBuf,
    pub tolerances: ToleranceConfig,
    pub trend: TrendConfig,
    pub samples: SampleConfig,
    pub figure: FigureConfig,
}

impl Resolved {
    /// Tolerances for the trend probes, sharing the run seed.
    pub fn trend_tolerances(&self) -> ToleranceConfig {
        ToleranceConfig {
            optimizer_budget: self.trend.optimizer_budget,
            restarts: self.trend.restarts,
            ..self.tolerances
        }
    }
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl ScenarioConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        toml::from_str(&text).map_err(|source| CliError::ConfigParse {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn resolve(&self) -> Result<Resolved> {
        let tolerances = ToleranceConfig {
            rng_seed: self.seed,
            ..self.tolerances
        };
        tolerances.validate()?;
        let (delta, truncation, n_max) = match self.scenario.kind() {
            Some(kind) => {
                let delta = self.delta.unwrap_or(0.1);
                if !(delta > 0.0 && (1.0 - delta).powi(4) > 0.5) {
                    return Err(bad(format!("delta = {delta} violates 0 < delta, (1-delta)^4 > 1/2")));
                }
                let n = self.truncation.unwrap_or(40);
                if n < 4 {
                    return Err(bad(format!("truncation = {n} must be at least 4")));
                }
                let cap = model_capacity(kind, n);
                let n_max = self.n_max.unwrap_or(cap.min(20));
                if n_max == 0 || n_max > cap {
                    return Err(bad(format!(
                        "n_max = {n_max} must lie in 1..={cap} for kind {} at truncation {n}",
                        kind.name()
                    )));
                }
                (delta, n, n_max)
            }
            None => {
                let delta = self.delta.unwrap_or(0.25);
                if !(delta > 0.0 && delta <= 0.25) {
                    return Err(bad(format!("delta = {delta} must lie in (0, 0.25]")));
                }
                let n = self.truncation.unwrap_or(8);
                if !(2..=DEPTH_CAP).contains(&n) {
                    return Err(bad(format!("truncation = {n} must lie in 2..={DEPTH_CAP}")));
                }
                let n_max = self.n_max.unwrap_or(n);
                if !(2..=n).contains(&n_max) {
                    return Err(bad(format!("n_max = {n_max} must lie in 2..={n}")));
                }
                (delta, n, n_max)
            }
        };
        let t = &self.trend;
        if t.truncations.is_empty() || t.truncations.iter().any(|&n| n < 4) {
            return Err(bad("trend.truncations must be nonempty with entries >= 4"));
        }
        if !(t.b_separation > 0.0) || t.optimizer_budget == 0 || t.b_truncation < 4 {
            return Err(bad("trend.b_separation, trend.optimizer_budget and trend.b_truncation must be positive (truncation >= 4)"));
        }
        if self.samples.convexity < 1000 {
            return Err(bad("samples.convexity must be at least 1000"));
        }
        if self.figure.resolution < 16 {
            return Err(bad("figure.resolution must be at least 16"));
        }
        Ok(Resolved {
            scenario: self.scenario,
            delta,
            truncation,
            n_max,
            out_dir: self.out_dir.clone(),
            tolerances,
            trend: t.clone(),
            samples: self.samples.clone(),
            figure: self.figure.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_per_scenario() {
        let mut c = ScenarioConfig {
            scenario: Scenario::ThmB,
            ..Default::default()
        };
        let r = c.resolve().unwrap();
        assert_eq!((r.delta, r.truncation, r.n_max), (0.1, 40, 19));
        c.scenario = Scenario::SmoothC0;
        let r = c.resolve().unwrap();
        assert_eq!((r.delta, r.truncation, r.n_max), (0.25, 8, 8));
    }

    #[test]
    fn rejects_out_of_range() {
        let c = ScenarioConfig {
            scenario: Scenario::SmoothC0,
            delta: Some(0.3),
            ..Default::default()
        };
        assert!(matches!(c.resolve(), Err(CliError::Config(m)) if m.contains("0.25")));
        let c = ScenarioConfig {
            scenario: Scenario::ThmA,
            n_max: Some(40),
            ..Default::default()
        };
        assert!(c.resolve().is_err());
    }

    #[test]
    fn parses_toml() {
        let c: ScenarioConfig = toml::from_str(
            "scenario = \"thmC\"\ndelta = 0.05\n[trend]\nb_directions = 3\n[tolerances]\noptimizer_budget = 10\n",
        )
        .unwrap();
        assert_eq!(c.scenario, Scenario::ThmC);
        assert_eq!(c.trend.b_directions, 3);
        assert_eq!(c.trend.truncations, vec![8, 16, 32]);
        assert_eq!(c.tolerances.optimizer_budget, 10);
        assert!(toml::from_str::<ScenarioConfig>("scenaro = \"thmC\"").is_err());
    }
}
