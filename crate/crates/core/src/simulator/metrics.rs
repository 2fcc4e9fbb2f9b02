use crate::error::{Error, Result};
use crate::game::Decision;

use super::config::RewardSystem;
use super::EpochRecord;

/// Share each diagonal pairing would have if verdicts split evenly.
pub const IDEAL_DIAGONAL: f64 = 1.0 / 3.0;

/// Distance of the agreeing pairings from [`IDEAL_DIAGONAL`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deviations {
    pub accept_accept: f64,
    pub revision_revision: f64,
    pub reject_reject: f64,
    pub max: f64,
}

impl Deviations {
    /// From the (Accept,Accept), (Revision,Revision), (Reject,Reject) frequencies.
    pub fn from_diagonal(diagonal: [f64; 3]) -> Self {
        let [aa, revrev, rr] = diagonal.map(|f| (f - IDEAL_DIAGONAL).abs());
        Deviations { accept_accept: aa, revision_revision: revrev, reject_reject: rr, max: aa.max(revrev).max(rr) }
    }
}

/// Statistics over a contiguous run of epochs.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowStats {
    pub first_epoch: u64,
    pub len: u64,
    /// `counts[d1][d2]`.
    pub counts: [[u64; 3]; 3],
    pub frequencies: [[f64; 3]; 3],
    pub deviations: Deviations,
    pub reward_mean: f64,
    /// Population standard deviation of the per-epoch rewards.
    pub reward_std: f64,
}

impl WindowStats {
    pub fn from_parts(first_epoch: u64, counts: [[u64; 3]; 3], rewards: &[f64]) -> Result<Self> {
        let len: u64 = counts.iter().flatten().sum();
        if len == 0 || rewards.is_empty() {
            return Err(Error::EmptyWindow("no epochs to summarize"));
        }
        if len != rewards.len() as u64 {
            return Err(Error::InvalidConfig(format!("{len} decision pairs but {} rewards", rewards.len())));
        }
        let frequencies = counts.map(|row| row.map(|c| c as f64 / len as f64));
        let diagonal = [frequencies[0][0], frequencies[1][1], frequencies[2][2]];
        let (reward_mean, reward_std) = mean_std(rewards);
        Ok(WindowStats {
            first_epoch,
            len,
            counts,
            frequencies,
            deviations: Deviations::from_diagonal(diagonal),
            reward_mean,
            reward_std,
        })
    }

    pub fn frequency(&self, d1: Decision, d2: Decision) -> f64 {
        self.frequencies[d1.index()][d2.index()]
    }
}

pub fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Frequency table, deviations and reward spread of `records`.
pub fn summarize(records: &[EpochRecord]) -> Result<WindowStats> {
    let first = records.first().ok_or(Error::EmptyWindow("no epoch records"))?;
    let mut counts = [[0u64; 3]; 3];
    for r in records {
        counts[r.decisions[0].index()][r.decisions[1].index()] += 1;
    }
    let rewards: Vec<f64> = records.iter().map(|r| r.reward).collect();
    WindowStats::from_parts(first.epoch, counts, &rewards)
}

/// Trailing mean over `window` epochs; entry `k` covers epochs `k..k+window`.
pub fn moving_average(rewards: &[f64], window: usize) -> Vec<f64> {
    if window == 0 || rewards.len() < window {
        return Vec::new();
    }
    rewards.windows(window).map(|w| w.iter().sum::<f64>() / window as f64).collect()
}

/// Outcome of one training run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub system: RewardSystem,
    pub seed: u64,
    pub epochs: u64,
    pub moving_average_window: u64,
    pub stats_window_fraction: f64,
    /// Trailing stats window; `None` for an empty run.
    pub stats: Option<WindowStats>,
    /// Every epoch of the run; `None` for an empty run.
    pub full_run: Option<WindowStats>,
    /// Moving average of the reward; element `k` ends at epoch `k + window - 1`.
    pub moving_average: Vec<f64>,
}

impl RunSummary {
    /// Mean of the moving-average entries that end inside the stats window.
    pub fn final_window_moving_average(&self) -> Option<f64> {
        let stats = self.stats.as_ref()?;
        let w = self.moving_average_window.max(1);
        let start = stats.first_epoch.saturating_sub(w - 1) as usize;
        let tail = self.moving_average.get(start..).filter(|t| !t.is_empty())?;
        Some(tail.iter().sum::<f64>() / tail.len() as f64)
    }
}
