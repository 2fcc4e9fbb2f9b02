//! Vocabulary of the review game: decisions, quality thresholds, the
//! revision time discount, and the two 3x3 payoff matrices (current voucher
//! scheme and the graded proposal).

use std::fmt;
use std::str::FromStr;

use crate::bimatrix::Bimatrix;
use crate::error::{Error, Result};

/// A reviewer verdict. The discriminant is the canonical ordinal encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Decision {
    Accept = 0,
    Revision = 1,
    Reject = 2,
}

impl Decision {
    pub const ALL: [Decision; 3] = [Decision::Accept, Decision::Revision, Decision::Reject];
    pub const COUNT: usize = 3;

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Decision> {
        Decision::ALL.get(index).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            Decision::Accept => "Accept",
            Decision::Revision => "Revision",
            Decision::Reject => "Reject",
        }
    }

    /// Short token used in CSV output.
    pub fn token(self) -> &'static str {
        match self {
            Decision::Accept => "A",
            Decision::Revision => "Rev",
            Decision::Reject => "Rej",
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDecisionError(pub String);

impl fmt::Display for ParseDecisionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown decision {:?}", self.0)
    }
}

impl std::error::Error for ParseDecisionError {}

impl FromStr for Decision {
    type Err = ParseDecisionError;

    /// Accepts full names, CSV tokens and ordinal digits, case-insensitively.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "accept" | "a" | "0" => Ok(Decision::Accept),
            "revision" | "rev" | "1" => Ok(Decision::Revision),
            "reject" | "rej" | "2" => Ok(Decision::Reject),
            _ => Err(ParseDecisionError(s.to_string())),
        }
    }
}

/// Score thresholds and reviewer bias width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityModel {
    th_accept: f64,
    th_revision: f64,
    bias_halfwidth: f64,
}

impl QualityModel {
    pub fn new(th_accept: f64, th_revision: f64, bias_halfwidth: f64) -> Result<Self> {
        if !th_accept.is_finite() || !th_revision.is_finite() || !bias_halfwidth.is_finite() {
            return Err(Error::InvalidQualityModel("parameters must be finite".into()));
        }
        if th_accept <= th_revision {
            return Err(Error::InvalidQualityModel(format!(
                "acceptance threshold {th_accept} must exceed revision threshold {th_revision} (th_a > th_r)"
            )));
        }
        if bias_halfwidth < 0.0 {
            return Err(Error::InvalidQualityModel(format!(
                "bias half-width {bias_halfwidth} is negative"
            )));
        }
        Ok(QualityModel { th_accept, th_revision, bias_halfwidth })
    }

    pub fn th_accept(&self) -> f64 {
        self.th_accept
    }

    pub fn th_revision(&self) -> f64 {
        self.th_revision
    }

    pub fn bias_halfwidth(&self) -> f64 {
        self.bias_halfwidth
    }
}

impl Default for QualityModel {
    /// Thresholds 0.66 / 0.33 and biases in [-0.05, 0.05].
    fn default() -> Self {
        QualityModel { th_accept: 0.66, th_revision: 0.33, bias_halfwidth: 0.05 }
    }
}

/// Maps a score onto a verdict using half-open intervals:
/// `(th_a, inf)` accepts, `(th_r, th_a]` asks for revision, `(-inf, th_r]` rejects.
pub fn decide(score: f64, model: &QualityModel) -> Result<Decision> {
    if !score.is_finite() {
        return Err(Error::NonFinite("score"));
    }
    Ok(if score > model.th_accept {
        Decision::Accept
    } else if score > model.th_revision {
        Decision::Revision
    } else {
        Decision::Reject
    })
}

/// How the revision delay discount `d_t` is obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiscountSpec {
    /// A flat amount in payoff units.
    Fixed(f64),
    /// `(1 + daily_rate)^revision_days`.
    Compounded { daily_rate: f64, revision_days: u32 },
}

impl DiscountSpec {
    pub fn fixed(value: f64) -> Result<Self> {
        let spec = DiscountSpec::Fixed(value);
        spec.validate()?;
        Ok(spec)
    }

    pub fn compounded(daily_rate: f64, revision_days: u32) -> Result<Self> {
        let spec = DiscountSpec::Compounded { daily_rate, revision_days };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            DiscountSpec::Fixed(v) if !(v.is_finite() && v >= 0.0) => {
                Err(Error::InvalidDiscount(format!("fixed discount {v} must be finite and >= 0")))
            }
            DiscountSpec::Compounded { daily_rate, .. } if !(daily_rate.is_finite() && daily_rate >= 0.0) => {
                Err(Error::InvalidDiscount(format!("daily rate {daily_rate} must be finite and >= 0")))
            }
            _ => Ok(()),
        }
    }
}

pub fn compute_discount(spec: &DiscountSpec) -> f64 {
    match *spec {
        DiscountSpec::Fixed(v) => v,
        DiscountSpec::Compounded { daily_rate, revision_days } => {
            (1.0 + daily_rate).powf(f64::from(revision_days))
        }
    }
}

fn decision_labels() -> Vec<String> {
    Decision::ALL.iter().map(|d| d.name().to_string()).collect()
}

/// Payoffs under the voucher scheme: matching Accept or matching Reject pays
/// the full reward immediately, every other outcome involves a revision round
/// and pays `full_reward - d_t`.
pub fn build_current_matrix(full_reward: f64, d_t: f64) -> Result<Bimatrix> {
    if !(full_reward.is_finite() && full_reward > 0.0) {
        return Err(Error::InvalidDiscount(format!("full reward {full_reward} must be positive")));
    }
    if !(d_t.is_finite() && d_t >= 0.0 && d_t < full_reward) {
        return Err(Error::InvalidDiscount(format!(
            "discount {d_t} must satisfy 0 <= d_t < full reward {full_reward}"
        )));
    }
    let payoff = |a: Decision, b: Decision| {
        if a == b && a != Decision::Revision {
            full_reward
        } else {
            full_reward - d_t
        }
    };
    let table = grid(payoff);
    Bimatrix::new(decision_labels(), decision_labels(), table.clone(), table)
}

/// Payoffs under the graded proposal: agreement pays `2 * scale`, a one-step
/// disagreement pays `scale`, Accept against Reject pays `scale / 2`.
pub fn build_proposed_matrix(scale: f64) -> Result<Bimatrix> {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::InvalidScale(scale));
    }
    let payoff = |a: Decision, b: Decision| match a.index().abs_diff(b.index()) {
        0 => 2.0 * scale,
        1 => scale,
        _ => 0.5 * scale,
    };
    let table = grid(payoff);
    Bimatrix::new(decision_labels(), decision_labels(), table.clone(), table)
}

fn grid(f: impl Fn(Decision, Decision) -> f64) -> Vec<Vec<f64>> {
    Decision::ALL
        .iter()
        .map(|&row| Decision::ALL.iter().map(|&col| f(row, col)).collect())
        .collect()
}
