use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::policy::{sample_decision, Real};

use super::config::{Agent, ExperimentConfig};
use super::env::sample_paper;
use super::metrics::{moving_average, summarize, RunSummary};
use super::reward::agent_loss;
use super::EpochRecord;

fn check_agents<T: Real>(config: &ExperimentConfig, agents: &[Agent<T>; 2]) -> Result<()> {
    for (i, agent) in agents.iter().enumerate() {
        let c = agent.net.config();
        if c.hidden_width != config.hidden_width || c.residual_blocks != config.residual_blocks {
            return Err(Error::InvalidConfig(format!(
                "agent {} is {}x{} but the experiment expects {}x{}",
                i + 1,
                c.hidden_width,
                c.residual_blocks,
                config.hidden_width,
                config.residual_blocks
            )));
        }
    }
    Ok(())
}

/// Trains both agents for `config.epochs` epochs, calling `on_epoch` after
/// every epoch. The environment and action sampling share one RNG seeded
/// from `config.seed`, so a run is fully determined by the config and the
/// initial agents.
pub fn run_experiment<T: Real>(
    config: &ExperimentConfig,
    agents: &mut [Agent<T>; 2],
    mut on_epoch: impl FnMut(&EpochRecord),
) -> Result<RunSummary> {
    config.validate()?;
    check_agents(config, agents)?;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut records = Vec::with_capacity(config.epochs);
    for epoch in 0..config.epochs as u64 {
        let paper = sample_paper(&config.quality, &mut rng);
        let passes = [agents[0].net.forward(paper.estimate[0])?, agents[1].net.forward(paper.estimate[1])?];
        let d1 = sample_decision(&passes[0].probs, &mut rng)?.0;
        let d2 = sample_decision(&passes[1].probs, &mut rng)?.0;
        let reward = config.system.reward(d1, d2, config.d_t);

        let mut losses = [0.0; 2];
        for (i, (agent, pass)) in agents.iter_mut().zip(&passes).enumerate() {
            let own = [d1, d2][i];
            let loss = agent_loss(reward, own, &pass.probs, paper.true_decision, config.lambda_aux);
            losses[i] = loss.loss;
            agent.net.backward_and_step(&mut agent.optimizer, &pass.cache, loss.dlogits)?;
        }

        let record = EpochRecord {
            epoch,
            quality: paper.quality,
            bias: paper.bias,
            estimate: paper.estimate,
            true_decision: paper.true_decision,
            decisions: [d1, d2],
            reward,
            losses,
        };
        on_epoch(&record);
        records.push(record);
    }

    let rewards: Vec<f64> = records.iter().map(|r| r.reward).collect();
    let tail = config.stats_window_len();
    let (stats, full_run) = if records.is_empty() {
        (None, None)
    } else {
        (Some(summarize(&records[records.len() - tail..])?), Some(summarize(&records)?))
    };
    Ok(RunSummary {
        system: config.system,
        seed: config.seed,
        epochs: config.epochs as u64,
        moving_average_window: config.moving_average_window as u64,
        stats_window_fraction: config.stats_window_fraction,
        stats,
        full_run,
        moving_average: moving_average(&rewards, config.moving_average_window),
    })
}

/// [`run_experiment`] that also returns every epoch record.
pub fn run_experiment_collect<T: Real>(
    config: &ExperimentConfig,
    agents: &mut [Agent<T>; 2],
) -> Result<(RunSummary, Vec<EpochRecord>)> {
    let mut records = Vec::with_capacity(config.epochs);
    let summary = run_experiment(config, agents, |r| records.push(*r))?;
    Ok((summary, records))
}
