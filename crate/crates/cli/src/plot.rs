//! Hand-written SVG. Coordinates are printed with fixed precision so the
//! output is byte-stable.

use std::fmt::Write as _;

use anyhow::{bail, Result};
use reviewer_game_core::simulator::RunSummary;
use reviewer_game_core::Decision;

use crate::report::percent;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 60.0;
/// Upper bound on polyline vertices.
const MAX_POINTS: usize = 2000;

fn header(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

/// Moving-average reward against epoch, y axis fixed to [0, 1].
pub fn reward_curve(summary: &RunSummary) -> Result<String> {
    let series = &summary.moving_average;
    if series.is_empty() {
        bail!("refusing to plot an empty moving-average series");
    }
    let offset = summary.moving_average_window.saturating_sub(1) as f64;
    let last_epoch = offset + (series.len() - 1) as f64;
    let x_span = (last_epoch - offset).max(1.0);
    let (plot_w, plot_h) = (WIDTH - 2.0 * MARGIN, HEIGHT - 2.0 * MARGIN);
    let x = |epoch: f64| MARGIN + (epoch - offset) / x_span * plot_w;
    let y = |v: f64| MARGIN + (1.0 - v.clamp(0.0, 1.0)) * plot_h;

    let mut out = String::new();
    header(&mut out, WIDTH, HEIGHT);
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="30" text-anchor="middle" font-size="15">Reward moving average ({} system, seed {}, window {})</text>"#,
        WIDTH / 2.0,
        summary.system,
        summary.seed,
        summary.moving_average_window
    );
    for tick in 0..=5 {
        let v = tick as f64 / 5.0;
        let _ = writeln!(
            out,
            r##"<line x1="{MARGIN:.1}" y1="{0:.1}" x2="{1:.1}" y2="{0:.1}" stroke="#dddddd"/>"##,
            y(v),
            WIDTH - MARGIN
        );
        let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{v:.1}</text>"#, MARGIN - 6.0, y(v) + 4.0);
    }
    for tick in 0..=4 {
        let epoch = offset + x_span * tick as f64 / 4.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{:.0}</text>"#,
            x(epoch),
            HEIGHT - MARGIN + 18.0,
            epoch
        );
    }
    let _ = writeln!(
        out,
        r#"<rect x="{MARGIN:.1}" y="{MARGIN:.1}" width="{plot_w:.1}" height="{plot_h:.1}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">epoch</text>"#, WIDTH / 2.0, HEIGHT - 15.0);

    let stride = series.len().div_ceil(MAX_POINTS);
    let mut points = String::new();
    let mut indices: Vec<usize> = (0..series.len()).step_by(stride).collect();
    if indices.last() != Some(&(series.len() - 1)) {
        indices.push(series.len() - 1);
    }
    for (n, &k) in indices.iter().enumerate() {
        if n > 0 {
            points.push(' ');
        }
        let _ = write!(points, "{:.2},{:.2}", x(offset + k as f64), y(series[k]));
    }
    let _ = writeln!(out, r##"<polyline fill="none" stroke="#1f4e9c" stroke-width="1.2" points="{points}"/>"##);
    out.push_str("</svg>\n");
    Ok(out)
}

/// 3x3 heat grid of decision-pair frequencies over the stats window.
pub fn decision_grid(summary: &RunSummary) -> Result<String> {
    let Some(stats) = &summary.stats else {
        bail!("refusing to plot decision pairs of an empty run");
    };
    let cell = 110.0;
    let left = 110.0;
    let top = 90.0;
    let size = left + 3.0 * cell + 40.0;

    let mut out = String::new();
    header(&mut out, size, top + 3.0 * cell + 40.0);
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="30" text-anchor="middle" font-size="15">Decision pairs, epochs {}..{} ({} system, seed {})</text>"#,
        size / 2.0,
        stats.first_epoch,
        stats.first_epoch + stats.len,
        summary.system,
        summary.seed
    );
    let _ = writeln!(out, r#"<text x="{:.1}" y="60" text-anchor="middle">Reviewer 2</text>"#, left + 1.5 * cell);
    let _ = writeln!(
        out,
        r#"<text x="30" y="{0:.1}" text-anchor="middle" transform="rotate(-90 30 {0:.1})">Reviewer 1</text>"#,
        top + 1.5 * cell
    );
    for d in Decision::ALL {
        let k = d.index() as f64;
        let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#, left + (k + 0.5) * cell, top - 8.0, d.token());
        let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#, left - 8.0, top + (k + 0.5) * cell + 4.0, d.token());
    }
    for d1 in Decision::ALL {
        for d2 in Decision::ALL {
            let f = stats.frequency(d1, d2);
            let (cx, cy) = (left + d2.index() as f64 * cell, top + d1.index() as f64 * cell);
            // White at 0, dark blue at 1.
            let shade = |full: f64| (255.0 - (255.0 - full) * f.clamp(0.0, 1.0)).round() as u8;
            let fill = format!("#{:02x}{:02x}{:02x}", shade(31.0), shade(78.0), shade(156.0));
            let ink = if f > 0.5 { "white" } else { "black" };
            let _ = writeln!(
                out,
                r#"<rect x="{cx:.1}" y="{cy:.1}" width="{cell:.1}" height="{cell:.1}" fill="{fill}" stroke="black"/>"#
            );
            let _ = writeln!(
                out,
                r#"<text class="pct" data-pair="{}_{}" x="{:.1}" y="{:.1}" text-anchor="middle" fill="{ink}">{}</text>"#,
                d1.token(),
                d2.token(),
                cx + cell / 2.0,
                cy + cell / 2.0 + 4.0,
                percent(f)
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
