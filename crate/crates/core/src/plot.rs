//! Self-contained SVG line plots of trace columns against `step`.

use crate::error::{Error, Result};
use std::fmt::Write as _;

/// Columns plotted when none are requested.
pub const DEFAULT_COLUMNS: [&str; 6] = ["D", "D_w", "D6", "D6_w", "Dc", "Dc_w"];

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const COLORS: [&str; 8] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

/// A CSV table addressed by column name.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn parse(text: &str) -> Result<Table> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: Vec<String> = match lines.next() {
            Some(h) => h.split(',').map(|c| c.trim().to_string()).collect(),
            None => return Err(Error::Parse("trace is empty".into())),
        };
        let rows = lines
            .enumerate()
            .map(|(i, line)| {
                let row: Vec<f64> = line
                    .split(',')
                    .map(|c| c.trim().parse::<f64>().map_err(|_| Error::Parse(format!("row {}: bad number '{c}'", i + 1))))
                    .collect::<Result<_>>()?;
                if row.len() != header.len() {
                    return Err(Error::Parse(format!("row {} has {} columns, header has {}", i + 1, row.len(), header.len())));
                }
                Ok(row)
            })
            .collect::<Result<_>>()?;
        Ok(Table { header, rows })
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

/// Ticks at 1, 2, or 5 times a power of ten covering `[lo, hi]`.
fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let raw = (hi - lo) / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].into_iter().map(|m| m * mag).find(|&s| s >= raw).unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn label(v: f64) -> String {
    let s = format!("{:.6}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

fn padded_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if hi > lo {
        let pad = 0.05 * (hi - lo);
        (lo - pad, hi + pad)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

/// Plots `columns` of a trace table against its `step` column. Fails on an
/// empty table or a column the table lacks.
pub fn trace_svg(table: &Table, columns: &[String], title: &str) -> Result<String> {
    if table.rows.is_empty() {
        return Err(Error::InvalidConfig("trace has no data rows".into()));
    }
    if columns.is_empty() {
        return Err(Error::InvalidConfig("no columns selected".into()));
    }
    let steps = table.column("step").ok_or_else(|| Error::InvalidConfig("trace has no 'step' column".into()))?;
    let series: Vec<(&String, Vec<f64>)> = columns
        .iter()
        .map(|c| {
            table.column(c).map(|v| (c, v)).ok_or_else(|| {
                Error::InvalidConfig(format!("column '{c}' not in trace (available: {})", table.header.join(", ")))
            })
        })
        .collect::<Result<_>>()?;
    if let Some(v) = series.iter().flat_map(|(_, v)| v).chain(&steps).find(|v| !v.is_finite()) {
        return Err(Error::InvalidConfig(format!("trace holds a non-finite value ({v})")));
    }

    let (x0, x1) = padded_range(steps.iter().copied());
    let (y0, y1) = padded_range(series.iter().flat_map(|(_, v)| v.iter().copied()));
    let (pw, ph) = (WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM);
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + (y1 - y) / (y1 - y0) * ph;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(svg, r#"<text x="{}" y="22" text-anchor="middle" font-size="15">{}</text>"#, LEFT + pw / 2.0, escape(title));
    let _ = writeln!(svg, r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#);
    for t in ticks(x0, x1) {
        let x = sx(t);
        let _ = writeln!(svg, r#"<line x1="{x:.2}" y1="{}" x2="{x:.2}" y2="{}" stroke="black"/>"#, TOP + ph, TOP + ph + 5.0);
        let _ = writeln!(svg, r#"<text x="{x:.2}" y="{}" text-anchor="middle">{}</text>"#, TOP + ph + 18.0, label(t));
    }
    for t in ticks(y0, y1) {
        let y = sy(t);
        let _ = writeln!(svg, r##"<line x1="{LEFT}" y1="{y:.2}" x2="{}" y2="{y:.2}" stroke="#dddddd"/>"##, LEFT + pw);
        let _ = writeln!(svg, r#"<text x="{}" y="{:.2}" text-anchor="end">{}</text>"#, LEFT - 6.0, y + 4.0, label(t));
    }
    let _ = writeln!(svg, r#"<text x="{}" y="{}" text-anchor="middle">step</text>"#, LEFT + pw / 2.0, HEIGHT - 12.0);
    let _ = writeln!(svg, r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">disorder</text>"#, TOP + ph / 2.0, TOP + ph / 2.0);

    for (k, (name, values)) in series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let dash = if name.ends_with("_w") { r#" stroke-dasharray="6 3""# } else { "" };
        let points: Vec<String> = steps.iter().zip(values).map(|(&x, &y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ = writeln!(
            svg,
            r#"<polyline class="series" data-column="{}" fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{}"/>"#,
            escape(name),
            points.join(" ")
        );
        let ly = TOP + 12.0 + 20.0 * k as f64;
        let lx = LEFT + pw + 12.0;
        let _ = writeln!(svg, r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"{dash}/>"#, lx + 24.0);
        let _ = writeln!(svg, r#"<text x="{}" y="{}">{}</text>"#, lx + 30.0, ly + 4.0, escape(name));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
