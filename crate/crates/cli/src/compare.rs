use std::fmt::{self, Write as _};
use std::path::Path;

use anyhow::{bail, Context, Result};
use reviewer_game_core::simulator::{RunSummary, WindowStats};

use crate::report::{load_summary, percent};

/// How the current-system value relates to the proposed-system value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Greater,
    Less,
    Equal,
}

impl Verdict {
    pub fn of(current: f64, proposed: f64) -> Verdict {
        if current > proposed {
            Verdict::Greater
        } else if current < proposed {
            Verdict::Less
        } else {
            Verdict::Equal
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Verdict::Greater => ">",
            Verdict::Less => "<",
            Verdict::Equal => "=",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Greater => "greater",
            Verdict::Less => "less",
            Verdict::Equal => "equal",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub current: RunSummary,
    pub proposed: RunSummary,
    pub delta_max: Verdict,
    pub sigma: Verdict,
}

fn stats(s: &RunSummary, name: &str) -> Result<WindowStats> {
    s.stats.clone().with_context(|| format!("{name} run has no epochs to compare"))
}

pub fn compare_summaries(current: RunSummary, proposed: RunSummary) -> Result<Comparison> {
    if current.epochs != proposed.epochs
        || current.moving_average_window != proposed.moving_average_window
        || current.stats_window_fraction != proposed.stats_window_fraction
    {
        bail!(
            "runs are not comparable: epochs {} vs {}, window {} vs {}, stats fraction {} vs {}",
            current.epochs,
            proposed.epochs,
            current.moving_average_window,
            proposed.moving_average_window,
            current.stats_window_fraction,
            proposed.stats_window_fraction
        );
    }
    let (c, p) = (stats(&current, "current")?, stats(&proposed, "proposed")?);
    Ok(Comparison {
        delta_max: Verdict::of(c.deviations.max, p.deviations.max),
        sigma: Verdict::of(c.reward_std, p.reward_std),
        current,
        proposed,
    })
}

pub fn compare_runs(current_dir: &Path, proposed_dir: &Path) -> Result<Comparison> {
    compare_summaries(load_summary(current_dir)?, load_summary(proposed_dir)?)
}

impl Comparison {
    /// Side-by-side deviation table followed by the two verdict lines.
    pub fn render(&self) -> String {
        let (c, p) = (self.current.stats.as_ref().unwrap(), self.proposed.stats.as_ref().unwrap());
        let mut out = String::new();
        let _ = writeln!(out, "# metric: {} (seed {}) | {} (seed {})", self.current.system, self.current.seed, self.proposed.system, self.proposed.seed);
        for (name, a, b) in [
            ("delta_aa", c.deviations.accept_accept, p.deviations.accept_accept),
            ("delta_revrev", c.deviations.revision_revision, p.deviations.revision_revision),
            ("delta_rr", c.deviations.reject_reject, p.deviations.reject_reject),
            ("delta_max", c.deviations.max, p.deviations.max),
        ] {
            let _ = writeln!(out, "{name}={a:.4} | {b:.4}  ({} | {})", percent(a), percent(b));
        }
        let _ = writeln!(out, "reward_mean={:.4} | {:.4}", c.reward_mean, p.reward_mean);
        let _ = writeln!(out, "reward_std={:.4} | {:.4}", c.reward_std, p.reward_std);
        let _ = writeln!(
            out,
            "delta_max_verdict={}  (current {:.4} {} proposed {:.4})",
            self.delta_max,
            c.deviations.max,
            self.delta_max.symbol(),
            p.deviations.max
        );
        let _ = writeln!(
            out,
            "sigma_verdict={}  (current {:.4} {} proposed {:.4})",
            self.sigma,
            c.reward_std,
            self.sigma.symbol(),
            p.reward_std
        );
        out
    }
}
