//! Plot exports for one state dimension.
//!
//! The CSV has one row per covered timestep:
//!
//! ```text
//! t,reach_lower,reach_upper,sample_lower,sample_upper,unsafe_threshold
//! ```
//!
//! Reach bounds are interval hulls of the reported reach sets
//! ([`Verdict::reach_at`]); sample columns are empty where nothing was
//! logged; the threshold column is empty when no unsafe halfspace constrains
//! this dimension alone.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::geometry::UnsafeSpec;
use crate::monitor::{Log, Verdict};
use crate::Time;

use super::format_number;

/// One monitoring run to draw: its verdict and the samples it used.
#[derive(Clone, Copy, Debug)]
pub struct PlotLayer<'a> {
    pub label: &'a str,
    pub verdict: &'a Verdict,
    pub log: &'a Log,
}

struct Row {
    t: Time,
    reach: (f64, f64),
    sample: Option<(f64, f64)>,
}

fn rows(verdict: &Verdict, log: &Log, dim: usize) -> Result<Vec<Row>> {
    if dim >= log.dim() {
        return Err(Error::invalid(format!(
            "dimension index {dim} out of range for {} state variables",
            log.dim()
        )));
    }
    let Some((start, end)) = verdict.span() else {
        return Ok(Vec::new());
    };
    (start..=end)
        .map(|t| {
            let z = verdict
                .reach_at(t)
                .ok_or_else(|| Error::invalid(format!("no reach set covers time {t}")))?;
            Error::check_dim(log.dim(), z.dim())?;
            let hull = z.interval_hull();
            let sample = log.get(t).map(|s| {
                let b = s.set.interval_hull();
                (b.lower()[dim], b.upper()[dim])
            });
            Ok(Row {
                t,
                reach: (hull.lower()[dim], hull.upper()[dim]),
                sample,
            })
        })
        .collect()
}

pub fn export_plot_csv(verdict: &Verdict, log: &Log, u: &UnsafeSpec, dim: usize) -> Result<String> {
    let rows = rows(verdict, log, dim)?;
    let threshold = u.axis_threshold(dim).map(format_number).unwrap_or_default();
    let mut out =
        String::from("t,reach_lower,reach_upper,sample_lower,sample_upper,unsafe_threshold\n");
    for r in rows {
        let (sl, su) = match r.sample {
            Some((l, h)) => (format_number(l), format_number(h)),
            None => (String::new(), String::new()),
        };
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.t,
            format_number(r.reach.0),
            format_number(r.reach.1),
            sl,
            su,
            threshold
        )
        .expect("writing to a String");
    }
    Ok(out)
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 40.0;
const BAND_COLORS: [&str; 3] = ["#1f77b4", "#2ca02c", "#9467bd"];

/// Reach bands first, then sample marks, then the unsafe threshold.
pub fn export_plot_svg(layers: &[PlotLayer<'_>], u: &UnsafeSpec, dim: usize) -> Result<String> {
    let mut tables = Vec::with_capacity(layers.len());
    for layer in layers {
        tables.push(rows(layer.verdict, layer.log, dim)?);
    }
    let threshold = u.axis_threshold(dim);

    let mut t_range = (f64::INFINITY, f64::NEG_INFINITY);
    let mut y_range = (f64::INFINITY, f64::NEG_INFINITY);
    for r in tables.iter().flatten() {
        let t = r.t as f64;
        t_range = (t_range.0.min(t), t_range.1.max(t));
        let (lo, hi) = r
            .sample
            .map_or(r.reach, |s| (s.0.min(r.reach.0), s.1.max(r.reach.1)));
        y_range = (y_range.0.min(lo), y_range.1.max(hi));
    }
    if let Some(th) = threshold {
        y_range = (y_range.0.min(th), y_range.1.max(th));
    }
    if !t_range.0.is_finite() {
        t_range = (0.0, 1.0);
        y_range = (0.0, 1.0);
    }
    if t_range.1 == t_range.0 {
        t_range.1 += 1.0;
    }
    if y_range.1 == y_range.0 {
        y_range = (y_range.0 - 1.0, y_range.1 + 1.0);
    }
    let pad = 0.05 * (y_range.1 - y_range.0);
    y_range = (y_range.0 - pad, y_range.1 + pad);

    let sx = |t: f64| MARGIN + (t - t_range.0) / (t_range.1 - t_range.0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| {
        HEIGHT - MARGIN - (y - y_range.0) / (y_range.1 - y_range.0) * (HEIGHT - 2.0 * MARGIN)
    };

    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        w,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        w,
        r#"<line x1="{MARGIN}" y1="{y:.3}" x2="{x2:.3}" y2="{y:.3}" stroke="black"/>"#,
        y = HEIGHT - MARGIN,
        x2 = WIDTH - MARGIN
    );
    let _ = writeln!(
        w,
        r#"<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{y:.3}" stroke="black"/>"#,
        y = HEIGHT - MARGIN
    );
    let _ = writeln!(
        w,
        r#"<text x="{MARGIN}" y="{y:.3}" font-size="10">t={}</text>"#,
        format_number(t_range.0),
        y = HEIGHT - MARGIN + 14.0
    );
    let _ = writeln!(
        w,
        r#"<text x="{x:.3}" y="{y:.3}" font-size="10" text-anchor="end">t={}</text>"#,
        format_number(t_range.1),
        x = WIDTH - MARGIN,
        y = HEIGHT - MARGIN + 14.0
    );

    for (k, (layer, table)) in layers.iter().zip(&tables).enumerate() {
        if table.is_empty() {
            continue;
        }
        let color = BAND_COLORS[k % BAND_COLORS.len()];
        let mut points: Vec<String> = table
            .iter()
            .map(|r| format!("{:.3},{:.3}", sx(r.t as f64), sy(r.reach.1)))
            .collect();
        points.extend(
            table
                .iter()
                .rev()
                .map(|r| format!("{:.3},{:.3}", sx(r.t as f64), sy(r.reach.0))),
        );
        let _ = writeln!(
            w,
            r#"<polygon class="reach" data-label="{}" points="{}" fill="{color}" fill-opacity="0.35" stroke="{color}" stroke-width="0.5"/>"#,
            layer.label,
            points.join(" ")
        );
    }
    for table in &tables {
        for r in table {
            if let Some((lo, hi)) = r.sample {
                let x = sx(r.t as f64);
                let (top, bottom) = (sy(hi), sy(lo));
                let _ = writeln!(
                    w,
                    r#"<rect class="sample" x="{:.3}" y="{:.3}" width="3" height="{:.3}" fill="black"/>"#,
                    x - 1.5,
                    top - 1.0,
                    bottom - top + 2.0
                );
            }
        }
    }
    if let Some(th) = threshold {
        let _ = writeln!(
            w,
            r#"<line class="unsafe" x1="{MARGIN}" y1="{y:.3}" x2="{x2:.3}" y2="{y:.3}" stroke="red" stroke-dasharray="4 3"/>"#,
            y = sy(th),
            x2 = WIDTH - MARGIN
        );
    }
    for (k, layer) in layers.iter().enumerate() {
        let _ = writeln!(
            w,
            r#"<text x="{x:.3}" y="{y:.3}" font-size="11" fill="{color}">{} ({})</text>"#,
            layer.label,
            layer.verdict.status().as_str(),
            x = MARGIN + 5.0,
            y = MARGIN + 12.0 * (k as f64 + 1.0),
            color = BAND_COLORS[k % BAND_COLORS.len()]
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
