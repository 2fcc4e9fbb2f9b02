//! Files describing a finished run, and parsers for each of them.
//!
//! * `summary.txt`: flat `key=value` dump of the [`RunSummary`] at full precision.
//! * `report.txt`: the same figures rounded for reading (`delta_revrev=0.2273`, `freq_Rev_Rev=10.60%`).
//! * `frequencies.csv`: decision-pair counts for the stats window and the full run.
//! * `moving_average.csv`: the reward moving average, one row per window end.
//! * `reward_curve.svg`, `decision_pairs.svg`: plots.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, ensure, Context, Result};
use reviewer_game_core::simulator::{Deviations, RunSummary, WindowStats};
use reviewer_game_core::Decision;

use crate::plot;

pub const SUMMARY_FILE: &str = "summary.txt";
pub const REPORT_FILE: &str = "report.txt";
pub const FREQUENCIES_FILE: &str = "frequencies.csv";
pub const MOVING_AVERAGE_FILE: &str = "moving_average.csv";
pub const REWARD_PLOT_FILE: &str = "reward_curve.svg";
pub const DECISION_PLOT_FILE: &str = "decision_pairs.svg";

pub const FREQUENCIES_HEADER: &str = "window,d1,d2,count,frequency";
pub const MOVING_AVERAGE_HEADER: &str = "epoch,moving_average";

pub fn percent(x: f64) -> String {
    format!("{:.2}%", 100.0 * x)
}

fn pair_key(d1: Decision, d2: Decision) -> String {
    format!("{}_{}", d1.token(), d2.token())
}

fn write_window(out: &mut String, prefix: &str, w: &WindowStats) {
    let _ = writeln!(out, "{prefix}.first_epoch={}", w.first_epoch);
    let _ = writeln!(out, "{prefix}.len={}", w.len);
    for d1 in Decision::ALL {
        for d2 in Decision::ALL {
            let _ = writeln!(out, "{prefix}.count.{}={}", pair_key(d1, d2), w.counts[d1.index()][d2.index()]);
        }
    }
    let _ = writeln!(out, "{prefix}.reward_mean={}", w.reward_mean);
    let _ = writeln!(out, "{prefix}.reward_std={}", w.reward_std);
    let d = &w.deviations;
    let _ = writeln!(out, "{prefix}.delta_aa={}", d.accept_accept);
    let _ = writeln!(out, "{prefix}.delta_revrev={}", d.revision_revision);
    let _ = writeln!(out, "{prefix}.delta_rr={}", d.reject_reject);
    let _ = writeln!(out, "{prefix}.delta_max={}", d.max);
}

pub fn render_summary(s: &RunSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "system={}", s.system);
    let _ = writeln!(out, "seed={}", s.seed);
    let _ = writeln!(out, "epochs={}", s.epochs);
    let _ = writeln!(out, "window={}", s.moving_average_window);
    let _ = writeln!(out, "stats_window_fraction={}", s.stats_window_fraction);
    let _ = writeln!(out, "moving_average_len={}", s.moving_average.len());
    if let Some(v) = s.final_window_moving_average() {
        let _ = writeln!(out, "final_moving_average={v}");
    }
    if let Some(w) = &s.stats {
        write_window(&mut out, "stats", w);
    }
    if let Some(w) = &s.full_run {
        write_window(&mut out, "full", w);
    }
    out
}

/// Reading copy of the summary; values rounded, percentages to two decimals.
pub fn render_report(s: &RunSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "system={}", s.system);
    let _ = writeln!(out, "seed={}", s.seed);
    let _ = writeln!(out, "epochs={}", s.epochs);
    let _ = writeln!(out, "window={}", s.moving_average_window);
    let Some(w) = &s.stats else {
        let _ = writeln!(out, "stats=none");
        return out;
    };
    let _ = writeln!(out, "stats_window={}..{}", w.first_epoch, w.first_epoch + w.len);
    if let Some(v) = s.final_window_moving_average() {
        let _ = writeln!(out, "final_moving_average={v:.4}");
    }
    let _ = writeln!(out, "reward_mean={:.4}", w.reward_mean);
    let _ = writeln!(out, "reward_std={:.4}", w.reward_std);
    for d1 in Decision::ALL {
        for d2 in Decision::ALL {
            let _ = writeln!(out, "freq_{}={}", pair_key(d1, d2), percent(w.frequency(d1, d2)));
        }
    }
    render_deviations(&mut out, "", &w.deviations);
    out
}

pub(crate) fn render_deviations(out: &mut String, prefix: &str, d: &Deviations) {
    for (name, v) in [
        ("delta_aa", d.accept_accept),
        ("delta_revrev", d.revision_revision),
        ("delta_rr", d.reject_reject),
        ("delta_max", d.max),
    ] {
        let _ = writeln!(out, "{prefix}{name}={v:.4}");
        let _ = writeln!(out, "{prefix}{name}_pct={}", percent(v));
    }
}

pub fn render_frequencies(s: &RunSummary) -> String {
    let mut out = format!("{FREQUENCIES_HEADER}\n");
    for (name, w) in [("final", &s.stats), ("full", &s.full_run)] {
        let Some(w) = w else { continue };
        for d1 in Decision::ALL {
            for d2 in Decision::ALL {
                let (i, j) = (d1.index(), d2.index());
                let _ = writeln!(out, "{name},{},{},{},{}", d1.token(), d2.token(), w.counts[i][j], w.frequencies[i][j]);
            }
        }
    }
    out
}

pub fn render_moving_average(s: &RunSummary) -> String {
    let mut out = format!("{MOVING_AVERAGE_HEADER}\n");
    let offset = s.moving_average_window.saturating_sub(1);
    for (k, v) in s.moving_average.iter().enumerate() {
        let _ = writeln!(out, "{},{v}", k as u64 + offset);
    }
    out
}

/// Writes the summary, report and CSV files, plus both plots when `plots`
/// is set. Plotting an empty moving-average series is an error.
pub fn emit_report(summary: &RunSummary, dir: &Path, plots: bool) -> Result<()> {
    let write = |name: &str, text: String| {
        let path = dir.join(name);
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
    };
    write(SUMMARY_FILE, render_summary(summary))?;
    write(REPORT_FILE, render_report(summary))?;
    write(FREQUENCIES_FILE, render_frequencies(summary))?;
    write(MOVING_AVERAGE_FILE, render_moving_average(summary))?;
    if plots {
        emit_plots(summary, dir)?;
    }
    Ok(())
}

pub fn emit_plots(summary: &RunSummary, dir: &Path) -> Result<()> {
    let curve = plot::reward_curve(summary)?;
    let grid = plot::decision_grid(summary)?;
    fs::write(dir.join(REWARD_PLOT_FILE), curve).context("writing reward plot")?;
    fs::write(dir.join(DECISION_PLOT_FILE), grid).context("writing decision plot")?;
    Ok(())
}

/// Parses `key=value` lines; blank lines and `#` comments are skipped.
pub fn parse_kv(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| anyhow!("line {}: expected key=value", i + 1))?;
        if map.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            bail!("line {}: duplicate key {:?}", i + 1, k.trim());
        }
    }
    Ok(map)
}

struct Fields<'a>(&'a BTreeMap<String, String>);

impl Fields<'_> {
    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        let raw = self.0.get(key).ok_or_else(|| anyhow!("missing key {key:?}"))?;
        raw.parse::<T>().map_err(|e| anyhow!("key {key:?}: cannot parse {raw:?}: {e}"))
    }

    fn window(&self, prefix: &str) -> Result<Option<WindowStats>> {
        if !self.0.contains_key(&format!("{prefix}.len")) {
            return Ok(None);
        }
        let mut counts = [[0u64; 3]; 3];
        for d1 in Decision::ALL {
            for d2 in Decision::ALL {
                counts[d1.index()][d2.index()] = self.get(&format!("{prefix}.count.{}", pair_key(d1, d2)))?;
            }
        }
        let len: u64 = self.get(&format!("{prefix}.len"))?;
        ensure!(counts.iter().flatten().sum::<u64>() == len, "{prefix}: counts do not add up to {len}");
        ensure!(len > 0, "{prefix}: empty window");
        let frequencies = counts.map(|row| row.map(|c| c as f64 / len as f64));
        let deviations = Deviations::from_diagonal([frequencies[0][0], frequencies[1][1], frequencies[2][2]]);
        let stored: f64 = self.get(&format!("{prefix}.delta_max"))?;
        ensure!(stored == deviations.max, "{prefix}: delta_max {stored} disagrees with the counts");
        Ok(Some(WindowStats {
            first_epoch: self.get(&format!("{prefix}.first_epoch"))?,
            len,
            counts,
            frequencies,
            deviations,
            reward_mean: self.get(&format!("{prefix}.reward_mean"))?,
            reward_std: self.get(&format!("{prefix}.reward_std"))?,
        }))
    }
}

pub fn parse_moving_average(text: &str, window: u64) -> Result<Vec<f64>> {
    let mut lines = text.lines();
    ensure!(lines.next().map(str::trim) == Some(MOVING_AVERAGE_HEADER), "moving-average csv: bad header");
    let offset = window.saturating_sub(1);
    let mut out = Vec::new();
    for (k, line) in lines.enumerate() {
        let (epoch, v) = line.split_once(',').ok_or_else(|| anyhow!("moving-average csv line {}: expected 2 fields", k + 2))?;
        let epoch: u64 = epoch.parse().with_context(|| format!("moving-average csv line {}", k + 2))?;
        ensure!(epoch == k as u64 + offset, "moving-average csv line {}: epoch {epoch} out of sequence", k + 2);
        out.push(v.parse().with_context(|| format!("moving-average csv line {}", k + 2))?);
    }
    Ok(out)
}

/// One row of `frequencies.csv`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyRow {
    pub window: String,
    pub d1: Decision,
    pub d2: Decision,
    pub count: u64,
    pub frequency: f64,
}

pub fn parse_frequencies(text: &str) -> Result<Vec<FrequencyRow>> {
    let mut lines = text.lines();
    ensure!(lines.next().map(str::trim) == Some(FREQUENCIES_HEADER), "frequency csv: bad header");
    lines
        .enumerate()
        .map(|(k, line)| {
            let f: Vec<&str> = line.split(',').collect();
            ensure!(f.len() == 5, "frequency csv line {}: expected 5 fields", k + 2);
            let ctx = || format!("frequency csv line {}", k + 2);
            Ok(FrequencyRow {
                window: f[0].to_string(),
                d1: f[1].parse().map_err(|e| anyhow!("{e}")).with_context(ctx)?,
                d2: f[2].parse().map_err(|e| anyhow!("{e}")).with_context(ctx)?,
                count: f[3].parse().with_context(ctx)?,
                frequency: f[4].parse().with_context(ctx)?,
            })
        })
        .collect()
}

pub fn parse_summary(summary_text: &str, moving_average_text: &str) -> Result<RunSummary> {
    let map = parse_kv(summary_text)?;
    let f = Fields(&map);
    let window: u64 = f.get("window")?;
    let moving_average = parse_moving_average(moving_average_text, window)?;
    let expected: usize = f.get("moving_average_len")?;
    ensure!(moving_average.len() == expected, "moving average has {} rows, summary says {expected}", moving_average.len());
    Ok(RunSummary {
        system: f.get("system")?,
        seed: f.get("seed")?,
        epochs: f.get("epochs")?,
        moving_average_window: window,
        stats_window_fraction: f.get("stats_window_fraction")?,
        stats: f.window("stats")?,
        full_run: f.window("full")?,
        moving_average,
    })
}

/// Reads back the [`RunSummary`] written by [`emit_report`].
pub fn load_summary(dir: &Path) -> Result<RunSummary> {
    let read = |name: &str| {
        let path = dir.join(name);
        fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))
    };
    parse_summary(&read(SUMMARY_FILE)?, &read(MOVING_AVERAGE_FILE)?)
        .with_context(|| format!("parsing run in {}", dir.display()))
}
