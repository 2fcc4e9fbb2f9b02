//! Two-agent self-play: each epoch draws a paper, both agents act on their
//! own noisy estimate, the reward scheme scores the pair of verdicts, and
//! each agent takes one policy-gradient step.

pub mod config;
pub mod env;
pub mod metrics;
pub mod records;
pub mod reward;
mod run;

use crate::game::Decision;

pub use config::{Agent, ExperimentConfig, RewardSystem};
pub use env::{sample_paper, PaperSample};
pub use metrics::{mean_std, moving_average, summarize, Deviations, RunSummary, WindowStats, IDEAL_DIAGONAL};
pub use records::{read_records, RecordWriter, RECORD_HEADER};
pub use reward::{agent_loss, reward_current, reward_proposed, AgentLoss};
pub use run::{run_experiment, run_experiment_collect};

/// Telemetry for one training epoch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpochRecord {
    pub epoch: u64,
    pub quality: f64,
    pub bias: [f64; 2],
    pub estimate: [f64; 2],
    pub true_decision: Decision,
    pub decisions: [Decision; 2],
    pub reward: f64,
    pub losses: [f64; 2],
}
