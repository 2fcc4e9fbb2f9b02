//! Reviewer-reward peer-review game: payoff models, exhaustive equilibrium
//! analysis, and two-agent self-play training of residual policy networks.

pub mod bimatrix;
pub mod equilibrium;
pub mod error;
pub mod game;
pub mod policy;
pub mod simulator;

pub use bimatrix::Bimatrix;
pub use error::{Error, Result};
pub use game::{Decision, DiscountSpec, QualityModel};
pub use simulator::{EpochRecord, ExperimentConfig, RewardSystem, RunSummary};
