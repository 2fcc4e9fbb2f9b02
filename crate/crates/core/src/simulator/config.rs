use std::fmt;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::game::{Decision, QualityModel};
use crate::policy::{Activation, AdamConfig, AdamState, NetworkConfig, PolicyNetwork, Real};

use super::reward::{reward_current, reward_proposed};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RewardSystem {
    /// Voucher scheme: 1.0 for matching Accept or matching Reject, `1 - d_t` otherwise.
    Current,
    /// Graded scheme: 1.0 / 0.5 / 0.2 by distance between the two verdicts.
    Proposed,
}

impl RewardSystem {
    pub fn reward(self, d1: Decision, d2: Decision, d_t: f64) -> f64 {
        match self {
            RewardSystem::Current => reward_current(d1, d2, d_t),
            RewardSystem::Proposed => reward_proposed(d1, d2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RewardSystem::Current => "current",
            RewardSystem::Proposed => "proposed",
        }
    }
}

impl fmt::Display for RewardSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RewardSystem {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "current" => Ok(RewardSystem::Current),
            "proposed" => Ok(RewardSystem::Proposed),
            other => Err(format!("unknown reward system {other:?} (expected current or proposed)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig {
    pub system: RewardSystem,
    pub epochs: usize,
    pub learning_rate: f64,
    pub hidden_width: usize,
    pub residual_blocks: usize,
    pub lambda_aux: f64,
    /// Revision discount on the unit reward scale.
    pub d_t: f64,
    pub quality: QualityModel,
    pub moving_average_window: usize,
    /// Trailing fraction of epochs used for the summary statistics.
    pub stats_window_fraction: f64,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            system: RewardSystem::Current,
            epochs: 100_000,
            learning_rate: 1e-5,
            hidden_width: 256,
            residual_blocks: 10,
            lambda_aux: 0.05,
            d_t: 0.2,
            quality: QualityModel::default(),
            moving_average_window: 100,
            stats_window_fraction: 0.2,
            seed: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidConfig(msg));
        if self.moving_average_window == 0 {
            return fail("moving-average window must be at least 1".into());
        }
        // Zero epochs is allowed and yields an empty run.
        if self.epochs != 0 && self.epochs < self.moving_average_window {
            return fail(format!(
                "epochs ({}) must be at least the moving-average window ({})",
                self.epochs, self.moving_average_window
            ));
        }
        if !(self.d_t.is_finite() && (0.0..1.0).contains(&self.d_t)) {
            return fail(format!("d_t = {} must satisfy 0 <= d_t < 1", self.d_t));
        }
        if !(self.lambda_aux.is_finite() && self.lambda_aux >= 0.0) {
            return fail(format!("lambda_aux = {} must be finite and >= 0", self.lambda_aux));
        }
        if !(self.stats_window_fraction > 0.0 && self.stats_window_fraction <= 1.0) {
            return fail(format!("stats_window_fraction = {} must lie in (0, 1]", self.stats_window_fraction));
        }
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return fail(format!("learning_rate = {} must be positive", self.learning_rate));
        }
        if self.hidden_width == 0 {
            return fail("hidden_width must be at least 1".into());
        }
        Ok(())
    }

    /// Number of trailing epochs summarized: `ceil(epochs * fraction)`,
    /// at least one when there are any epochs.
    pub fn stats_window_len(&self) -> usize {
        if self.epochs == 0 {
            return 0;
        }
        ((self.epochs as f64 * self.stats_window_fraction).ceil() as usize).clamp(1, self.epochs)
    }

    pub fn network_config(&self, init_seed: u64) -> NetworkConfig {
        NetworkConfig {
            hidden_width: self.hidden_width,
            residual_blocks: self.residual_blocks,
            activation: Activation::Relu,
            init_seed,
        }
    }

    pub fn adam_config(&self) -> AdamConfig {
        AdamConfig { lr: self.learning_rate, ..AdamConfig::default() }
    }

    /// Initialization seeds of the two agents, drawn from a stream separate
    /// from the one that drives the environment.
    pub fn agent_seeds(&self) -> [u64; 2] {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(1);
        [rng.next_u64(), rng.next_u64()]
    }

    /// Two freshly initialized agents for this configuration.
    pub fn agents<T: Real>(&self) -> Result<[Agent<T>; 2]> {
        self.validate()?;
        let [a, b] = self.agent_seeds();
        Ok([Agent::new(self.network_config(a), self.adam_config())?, Agent::new(self.network_config(b), self.adam_config())?])
    }
}

/// One reviewer: policy network plus its optimizer state.
#[derive(Debug, Clone, PartialEq)]
pub struct Agent<T> {
    pub net: PolicyNetwork<T>,
    pub optimizer: AdamState<T>,
}

impl<T: Real> Agent<T> {
    pub fn new(config: NetworkConfig, adam: AdamConfig) -> Result<Self> {
        adam.validate()?;
        let net = PolicyNetwork::new(config)?;
        let optimizer = AdamState::new(adam, &net);
        Ok(Agent { net, optimizer })
    }
}
