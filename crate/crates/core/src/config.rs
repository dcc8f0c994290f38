use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Tolerances and search budgets shared by the gauges and probes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ToleranceConfig {
    /// Absolute accuracy of bisection-based gauges.
    pub gauge_tol: f64,
    /// Objective evaluations allowed per ascent start.
    pub optimizer_budget: usize,
    /// Random starts added to the structured starting set of each probe.
    pub restarts: usize,
    pub rng_seed: u64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            gauge_tol: 1e-10,
            optimizer_budget: 4000,
            restarts: 8,
            rng_seed: 0,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.gauge_tol > 0.0) {
            return Err(invalid(format!(
                "gauge_tol must be positive, got {}",
                self.gauge_tol
            )));
        }
        if self.optimizer_budget == 0 {
            return Err(invalid("optimizer_budget must be positive"));
        }
        Ok(())
    }

    /// Independent generator for a numbered sub-task. Streams never share
    /// state, so results do not depend on thread scheduling.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        seeded_rng(self.rng_seed, stream)
    }
}

pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
