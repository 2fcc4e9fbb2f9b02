//! Training runs and seed sweeps written to disk.
//!
//! A run directory holds `config.txt`, `records.csv`, one checkpoint per
//! agent, and the files of [`crate::report`]. Output directories are built
//! under a temporary sibling name and renamed into place when complete.

use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use rayon::prelude::*;
use reviewer_game_core::policy::{checkpoint, Real};
use reviewer_game_core::simulator::{run_experiment, ExperimentConfig, RecordWriter, RunSummary};

use crate::config::render_config;
use crate::report::{emit_report, percent};
use crate::UsageError;

pub const CONFIG_FILE: &str = "config.txt";
pub const RECORDS_FILE: &str = "records.csv";
pub const SWEEP_FILE: &str = "sweep.csv";
pub const SWEEP_HEADER: &str = "seed,final_moving_average,reward_mean,reward_std,delta_aa,delta_revrev,delta_rr,delta_max,freq_rev_rev";

pub fn checkpoint_file(agent: usize) -> String {
    format!("agent{agent}.ckpt")
}

/// Scalar type used for network parameters during training.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Precision {
    #[default]
    F32,
    F64,
}

/// Fails unless `out` is absent and its parent directory exists.
pub fn check_output_dir(out: &Path) -> Result<()> {
    if out.exists() {
        return Err(UsageError(format!("output directory {} already exists", out.display())).into());
    }
    let parent = parent_of(out);
    if !parent.is_dir() {
        return Err(UsageError(format!("parent directory {} does not exist", parent.display())).into());
    }
    Ok(())
}

fn parent_of(path: &Path) -> PathBuf {
    match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    }
}

/// Creates `out` by filling a staging directory with `fill` and renaming it.
/// The staging directory is removed if `fill` fails.
pub fn build_atomically<T>(out: &Path, fill: impl FnOnce(&Path) -> Result<T>) -> Result<T> {
    check_output_dir(out)?;
    let name = out.file_name().context("output path has no final component")?.to_string_lossy();
    let staging = parent_of(out).join(format!(".{name}.partial-{}", std::process::id()));
    if staging.exists() {
        fs::remove_dir_all(&staging).with_context(|| format!("clearing {}", staging.display()))?;
    }
    fs::create_dir(&staging).with_context(|| format!("creating {}", staging.display()))?;
    match fill(&staging) {
        Ok(value) => {
            fs::rename(&staging, out).with_context(|| format!("moving results to {}", out.display()))?;
            Ok(value)
        }
        Err(e) => {
            let _ = fs::remove_dir_all(&staging);
            Err(e)
        }
    }
}

fn train_typed<T: Real>(config: &ExperimentConfig, dir: &Path) -> Result<RunSummary> {
    fs::write(dir.join(CONFIG_FILE), render_config(config)).context("writing config")?;
    let mut agents = config.agents::<T>()?;
    let file = File::create(dir.join(RECORDS_FILE)).context("creating records file")?;
    let mut writer = RecordWriter::new(BufWriter::new(file)).context("writing records header")?;
    let mut write_error = None;
    let progress_every = (config.epochs / 10).max(1) as u64;
    let summary = run_experiment(config, &mut agents, |record| {
        if write_error.is_none() {
            write_error = writer.write(record).err();
        }
        if (record.epoch + 1) % progress_every == 0 {
            log::info!(
                "{} seed {}: epoch {}/{}",
                config.system,
                config.seed,
                record.epoch + 1,
                config.epochs
            );
        }
    })?;
    if let Some(e) = write_error {
        return Err(e).context("writing records");
    }
    writer.finish().context("flushing records")?;
    for (i, agent) in agents.iter().enumerate() {
        let path = dir.join(checkpoint_file(i + 1));
        checkpoint::save(&path, &agent.net, &agent.optimizer).with_context(|| format!("writing {}", path.display()))?;
    }
    let plots = !summary.moving_average.is_empty();
    if !plots {
        log::warn!("no moving-average entries; skipping plots");
    }
    emit_report(&summary, dir, plots)?;
    Ok(summary)
}

/// Trains into an existing, empty directory.
pub fn train_into(config: &ExperimentConfig, precision: Precision, dir: &Path) -> Result<RunSummary> {
    log::info!("training {} system, seed {}, {} epochs ({precision:?})", config.system, config.seed, config.epochs);
    match precision {
        Precision::F32 => train_typed::<f32>(config, dir),
        Precision::F64 => train_typed::<f64>(config, dir),
    }
}

/// Trains one run into the new directory `out`.
pub fn train(config: &ExperimentConfig, precision: Precision, out: &Path) -> Result<RunSummary> {
    config.validate()?;
    build_atomically(out, |dir| train_into(config, precision, dir))
}

pub fn seed_dir_name(seed: u64) -> String {
    format!("seed-{seed}")
}

/// Trains one run per seed, concurrently, under `out/seed-<n>/`, then
/// writes `out/sweep.csv`. Summaries come back in the order of `seeds`.
pub fn sweep(config: &ExperimentConfig, seeds: &[u64], precision: Precision, out: &Path) -> Result<Vec<RunSummary>> {
    config.validate()?;
    if seeds.is_empty() {
        return Err(UsageError("no seeds given".into()).into());
    }
    let mut unique = seeds.to_vec();
    unique.sort_unstable();
    unique.dedup();
    if unique.len() != seeds.len() {
        return Err(UsageError("seed list contains duplicates".into()).into());
    }
    build_atomically(out, |dir| {
        let summaries = seeds
            .par_iter()
            .map(|&seed| {
                let run_dir = dir.join(seed_dir_name(seed));
                fs::create_dir(&run_dir).with_context(|| format!("creating {}", run_dir.display()))?;
                train_into(&ExperimentConfig { seed, ..*config }, precision, &run_dir)
            })
            .collect::<Result<Vec<_>>>()?;
        fs::write(dir.join(SWEEP_FILE), render_sweep(&summaries)).context("writing sweep table")?;
        Ok(summaries)
    })
}

pub fn render_sweep(summaries: &[RunSummary]) -> String {
    let mut out = format!("{SWEEP_HEADER}\n");
    for s in summaries {
        let _ = write!(out, "{}", s.seed);
        match (&s.stats, s.final_window_moving_average()) {
            (Some(w), Some(ma)) => {
                let d = &w.deviations;
                let _ = writeln!(
                    out,
                    ",{ma:.4},{:.4},{:.4},{:.4},{:.4},{:.4},{:.4},{}",
                    w.reward_mean,
                    w.reward_std,
                    d.accept_accept,
                    d.revision_revision,
                    d.reject_reject,
                    d.max,
                    percent(w.frequencies[1][1])
                );
            }
            _ => out.push_str(",,,,,,,,\n"),
        }
    }
    out
}
