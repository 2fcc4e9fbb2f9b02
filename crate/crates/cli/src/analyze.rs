use std::collections::BTreeSet;
use std::fmt::Write as _;

use reviewer_game_core::equilibrium::{Dominant, EquilibriumReport, MixedProfile, StrategyProfile};
use reviewer_game_core::Bimatrix;

/// Which pure-equilibrium classes to print.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sections {
    pub strict: bool,
    pub weak: bool,
}

impl Default for Sections {
    fn default() -> Self {
        Sections { strict: true, weak: true }
    }
}

fn profile(game: &Bimatrix, p: StrategyProfile) -> String {
    format!("({}, {})", game.row_labels()[p.row], game.col_labels()[p.col])
}

fn profiles(game: &Bimatrix, set: &BTreeSet<StrategyProfile>) -> Vec<String> {
    set.iter().map(|&p| profile(game, p)).collect()
}

fn dominant(labels: &[String], d: Option<Dominant>) -> String {
    match d {
        Some(d) => format!("{} ({})", labels[d.strategy], if d.strict { "strict" } else { "weak" }),
        None => "none".into(),
    }
}

fn dist(d: &[f64]) -> String {
    d.iter().map(|p| format!("{p:.6}")).collect::<Vec<_>>().join(", ")
}

fn mixed_line(game: &Bimatrix, m: &MixedProfile) -> String {
    let (u1, u2) = m.expected_payoffs(game);
    format!("row=[{}] col=[{}] payoffs=({u1:.6}, {u2:.6})", dist(&m.row_dist), dist(&m.col_dist))
}

/// One `[section]` per result class.
pub fn render_text(game: &Bimatrix, report: &EquilibriumReport, sections: Sections) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "game: {}x{}", game.rows(), game.cols());
    let _ = writeln!(out, "rows: {}", game.row_labels().join(" "));
    let _ = writeln!(out, "cols: {}", game.col_labels().join(" "));
    let mut section = |title: &str, lines: Vec<String>| {
        let _ = writeln!(out, "\n[{title}]");
        if lines.is_empty() {
            let _ = writeln!(out, "none");
        }
        for l in lines {
            let _ = writeln!(out, "{l}");
        }
    };
    if sections.strict {
        section("strict pure nash", profiles(game, &report.strict_pure));
    }
    if sections.weak {
        section("weak pure nash", profiles(game, &report.weak_pure));
        if sections.strict {
            let extra: BTreeSet<_> = report.weak_pure.difference(&report.strict_pure).copied().collect();
            section("weak but not strict", profiles(game, &extra));
        }
    }
    section("pareto efficient", profiles(game, &report.pareto));
    section(
        "dominant strategies",
        vec![
            format!("row: {}", dominant(game.row_labels(), report.dominant_row)),
            format!("col: {}", dominant(game.col_labels(), report.dominant_col)),
            format!("pair: {}", report.dominant_pair.map_or("none".into(), |p| profile(game, p))),
        ],
    );
    if let Some(mixed) = &report.mixed {
        section("mixed nash", mixed.iter().map(|m| mixed_line(game, m)).collect());
    }
    out
}

/// Flat `key=value` form; profiles are `row/col` labels joined by `;`.
pub fn render_kv(game: &Bimatrix, report: &EquilibriumReport, sections: Sections) -> String {
    let mut out = String::new();
    let join = |set: &BTreeSet<StrategyProfile>| {
        set.iter()
            .map(|p| format!("{}/{}", game.row_labels()[p.row], game.col_labels()[p.col]))
            .collect::<Vec<_>>()
            .join(";")
    };
    let _ = writeln!(out, "rows={}", game.rows());
    let _ = writeln!(out, "cols={}", game.cols());
    if sections.strict {
        let _ = writeln!(out, "strict_pure={}", join(&report.strict_pure));
    }
    if sections.weak {
        let _ = writeln!(out, "weak_pure={}", join(&report.weak_pure));
    }
    let _ = writeln!(out, "pareto={}", join(&report.pareto));
    let label = |labels: &[String], d: Option<Dominant>| d.map_or("none".to_string(), |d| labels[d.strategy].clone());
    let _ = writeln!(out, "dominant_row={}", label(game.row_labels(), report.dominant_row));
    let _ = writeln!(out, "dominant_row_strict={}", report.dominant_row.is_some_and(|d| d.strict));
    let _ = writeln!(out, "dominant_col={}", label(game.col_labels(), report.dominant_col));
    let _ = writeln!(out, "dominant_col_strict={}", report.dominant_col.is_some_and(|d| d.strict));
    if let Some(mixed) = &report.mixed {
        let _ = writeln!(out, "mixed_count={}", mixed.len());
        for (k, m) in mixed.iter().enumerate() {
            let csv = |d: &[f64]| d.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
            let _ = writeln!(out, "mixed.{k}.row={}", csv(&m.row_dist));
            let _ = writeln!(out, "mixed.{k}.col={}", csv(&m.col_dist));
        }
    }
    out
}
