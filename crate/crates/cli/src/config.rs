//! `key=value` experiment configuration files.
//!
//! Blank lines and lines starting with `#` are ignored. Every key is
//! optional; missing keys keep their default.

use std::fmt::Write as _;

use reviewer_game_core::simulator::{ExperimentConfig, RewardSystem};
use reviewer_game_core::QualityModel;
use thiserror::Error;

/// Parse failure; `line` is 1-based, 0 when no single line is at fault.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("config line {line}: {message}")]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

pub const KEYS: [&str; 13] = [
    "system",
    "epochs",
    "learning_rate",
    "hidden_width",
    "residual_blocks",
    "lambda_aux",
    "d_t",
    "th_a",
    "th_r",
    "bias_halfwidth",
    "window",
    "stats_window_fraction",
    "seed",
];

#[derive(Debug, Clone, Copy)]
struct Raw {
    system: RewardSystem,
    epochs: usize,
    learning_rate: f64,
    hidden_width: usize,
    residual_blocks: usize,
    lambda_aux: f64,
    d_t: f64,
    th_a: f64,
    th_r: f64,
    bias_halfwidth: f64,
    window: usize,
    stats_window_fraction: f64,
    seed: u64,
}

impl Default for Raw {
    fn default() -> Self {
        let c = ExperimentConfig::default();
        Raw {
            system: c.system,
            epochs: c.epochs,
            learning_rate: c.learning_rate,
            hidden_width: c.hidden_width,
            residual_blocks: c.residual_blocks,
            lambda_aux: c.lambda_aux,
            d_t: c.d_t,
            th_a: c.quality.th_accept(),
            th_r: c.quality.th_revision(),
            bias_halfwidth: c.quality.bias_halfwidth(),
            window: c.moving_average_window,
            stats_window_fraction: c.stats_window_fraction,
            seed: c.seed,
        }
    }
}

fn number<T: std::str::FromStr>(value: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    value.parse::<T>().map_err(|e| format!("cannot parse {value:?}: {e}"))
}

impl Raw {
    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "system" => self.system = value.parse()?,
            "epochs" => self.epochs = number(value)?,
            "learning_rate" => self.learning_rate = number(value)?,
            "hidden_width" => self.hidden_width = number(value)?,
            "residual_blocks" => self.residual_blocks = number(value)?,
            "lambda_aux" => self.lambda_aux = number(value)?,
            "d_t" => self.d_t = number(value)?,
            "th_a" => self.th_a = number(value)?,
            "th_r" => self.th_r = number(value)?,
            "bias_halfwidth" => self.bias_halfwidth = number(value)?,
            "window" => self.window = number(value)?,
            "stats_window_fraction" => self.stats_window_fraction = number(value)?,
            "seed" => self.seed = number(value)?,
            other => return Err(format!("unknown key {other:?}")),
        }
        Ok(())
    }

    fn reset(&mut self, key: &str) {
        let d = Raw::default();
        match key {
            "system" => self.system = d.system,
            "epochs" => self.epochs = d.epochs,
            "learning_rate" => self.learning_rate = d.learning_rate,
            "hidden_width" => self.hidden_width = d.hidden_width,
            "residual_blocks" => self.residual_blocks = d.residual_blocks,
            "lambda_aux" => self.lambda_aux = d.lambda_aux,
            "d_t" => self.d_t = d.d_t,
            "th_a" => self.th_a = d.th_a,
            "th_r" => self.th_r = d.th_r,
            "bias_halfwidth" => self.bias_halfwidth = d.bias_halfwidth,
            "window" => self.window = d.window,
            "stats_window_fraction" => self.stats_window_fraction = d.stats_window_fraction,
            "seed" => self.seed = d.seed,
            _ => unreachable!("keys are checked by set"),
        }
    }

    fn build(&self) -> reviewer_game_core::Result<ExperimentConfig> {
        let config = ExperimentConfig {
            system: self.system,
            epochs: self.epochs,
            learning_rate: self.learning_rate,
            hidden_width: self.hidden_width,
            residual_blocks: self.residual_blocks,
            lambda_aux: self.lambda_aux,
            d_t: self.d_t,
            quality: QualityModel::new(self.th_a, self.th_r, self.bias_halfwidth)?,
            moving_average_window: self.window,
            stats_window_fraction: self.stats_window_fraction,
            seed: self.seed,
        };
        config.validate()?;
        Ok(config)
    }
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let mut raw = Raw::default();
    // (key, line) in file order.
    let mut seen: Vec<(&str, usize)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let number = i + 1;
        let err = |message: String| ConfigError { line: number, message };
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| err(format!("expected key=value, found {line:?}")))?;
        let (key, value) = (key.trim(), value.trim());
        let key = KEYS.iter().copied().find(|k| *k == key).ok_or_else(|| err(format!("unknown key {key:?}")))?;
        if let Some((_, first)) = seen.iter().find(|(k, _)| *k == key) {
            return Err(err(format!("duplicate key {key:?} (first set on line {first})")));
        }
        raw.set(key, value).map_err(|m| err(format!("{key}: {m}")))?;
        seen.push((key, number));
    }

    raw.build().map_err(|e| {
        // Blame the latest line whose removal alone makes the file valid.
        let line = seen
            .iter()
            .rev()
            .find(|(key, _)| {
                let mut trial = raw;
                trial.reset(key);
                trial.build().is_ok()
            })
            .or(seen.last())
            .map_or(0, |&(_, line)| line);
        ConfigError { line, message: e.to_string() }
    })
}

/// Writes every key, so the output parses back to exactly `config`.
pub fn render_config(config: &ExperimentConfig) -> String {
    let mut s = String::new();
    let q = &config.quality;
    for (key, value) in [
        ("system", config.system.to_string()),
        ("epochs", config.epochs.to_string()),
        ("learning_rate", config.learning_rate.to_string()),
        ("hidden_width", config.hidden_width.to_string()),
        ("residual_blocks", config.residual_blocks.to_string()),
        ("lambda_aux", config.lambda_aux.to_string()),
        ("d_t", config.d_t.to_string()),
        ("th_a", q.th_accept().to_string()),
        ("th_r", q.th_revision().to_string()),
        ("bias_halfwidth", q.bias_halfwidth().to_string()),
        ("window", config.moving_average_window.to_string()),
        ("stats_window_fraction", config.stats_window_fraction.to_string()),
        ("seed", config.seed.to_string()),
    ] {
        let _ = writeln!(s, "{key}={value}");
    }
    s
}
