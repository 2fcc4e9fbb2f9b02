//! Command-line front end for the reviewer reward game.

pub mod analyze;
pub mod compare;
pub mod config;
pub mod plot;
pub mod report;
pub mod run;

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use reviewer_game_core::equilibrium::{analyze as analyze_game, AnalysisOptions, DEFAULT_TOLERANCE};
use reviewer_game_core::{Bimatrix, Error as CoreError};

pub use config::{parse_config, render_config, ConfigError};
pub use run::Precision;

/// Environment variable read for the log filter (`error`, `warn`, `info`, `debug`, `trace`).
pub const LOG_ENV: &str = "REVIEWER_GAME_LOG";

/// Bad input from the user, as opposed to a failure while running.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

#[derive(Debug, Parser)]
#[command(name = "reviewer-game", version, about = "Equilibria and self-play training for the reviewer reward game")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Kv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pure and mixed equilibria, dominance and Pareto efficiency of a bimatrix game.
    Analyze(AnalyzeArgs),
    /// Train two agents and write a run directory.
    Train(TrainArgs),
    /// Print the report of a finished run, optionally redrawing its plots.
    Report(ReportArgs),
    /// Train one run per seed, in parallel.
    Sweep(SweepArgs),
    /// Compare a current-system run with a proposed-system run.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    /// Only list strict pure equilibria.
    #[arg(long, conflicts_with = "weak")]
    pub strict: bool,
    /// Only list weak pure equilibria.
    #[arg(long)]
    pub weak: bool,
    /// Also enumerate mixed equilibria by support enumeration (games up to 4x4).
    #[arg(long)]
    pub mixed: bool,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Overrides the seed in the config file.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t)]
    pub precision: Precision,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub run: PathBuf,
    /// Regenerate the SVG plots.
    #[arg(long)]
    pub plots: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long, value_delimiter = ',', required = true)]
    pub seeds: Vec<u64>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    pub precision: Precision,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub current: PathBuf,
    #[arg(long)]
    pub proposed: PathBuf,
}

fn read_input(path: &Path) -> Result<String> {
    if !path.is_file() {
        return Err(UsageError(format!("{} is not a readable file", path.display())).into());
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn require_dir(path: &Path) -> Result<()> {
    if !path.is_dir() {
        return Err(UsageError(format!("{} is not a directory", path.display())).into());
    }
    Ok(())
}

fn load_config(path: &Path) -> Result<reviewer_game_core::ExperimentConfig> {
    let text = read_input(path)?;
    parse_config(&text).with_context(|| format!("in {}", path.display()))
}

/// Executes `cli`, returning the text destined for stdout.
pub fn execute(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Analyze(a) => {
            let game = Bimatrix::parse(&read_input(&a.matrix)?).with_context(|| format!("in {}", a.matrix.display()))?;
            if !(a.tolerance.is_finite() && a.tolerance >= 0.0) {
                return Err(UsageError(format!("tolerance {} must be finite and non-negative", a.tolerance)).into());
            }
            let report = analyze_game(&game, &AnalysisOptions { tolerance: a.tolerance, mixed: a.mixed })?;
            let sections = match (a.strict, a.weak) {
                (true, false) => analyze::Sections { strict: true, weak: false },
                (false, true) => analyze::Sections { strict: false, weak: true },
                _ => analyze::Sections::default(),
            };
            Ok(match a.format {
                Format::Text => analyze::render_text(&game, &report, sections),
                Format::Kv => analyze::render_kv(&game, &report, sections),
            })
        }
        Command::Train(t) => {
            let mut config = load_config(&t.config)?;
            if let Some(seed) = t.seed {
                config.seed = seed;
            }
            run::check_output_dir(&t.out)?;
            let summary = run::train(&config, t.precision, &t.out)?;
            Ok(report::render_report(&summary))
        }
        Command::Report(r) => {
            require_dir(&r.run)?;
            let summary = report::load_summary(&r.run)?;
            if r.plots {
                report::emit_plots(&summary, &r.run)?;
            }
            Ok(report::render_report(&summary))
        }
        Command::Sweep(s) => {
            let config = load_config(&s.config)?;
            run::check_output_dir(&s.out)?;
            let go = || run::sweep(&config, &s.seeds, s.precision, &s.out);
            let summaries = match s.jobs {
                Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build().context("starting worker pool")?.install(go)?,
                None => go()?,
            };
            Ok(run::render_sweep(&summaries))
        }
        Command::Compare(c) => {
            require_dir(&c.current)?;
            require_dir(&c.proposed)?;
            Ok(compare::compare_runs(&c.current, &c.proposed)?.render())
        }
    }
}

/// 1 for usage and parse errors, 2 for everything else.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    let usage = err.chain().any(|cause| {
        cause.is::<UsageError>()
            || cause.is::<ConfigError>()
            || cause.is::<clap::Error>()
            || matches!(
                cause.downcast_ref::<CoreError>(),
                Some(CoreError::BimatrixParse { .. } | CoreError::InvalidBimatrix(_) | CoreError::InvalidConfig(_))
            )
    });
    if usage {
        1
    } else {
        2
    }
}
