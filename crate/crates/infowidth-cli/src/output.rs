//! CSV and SVG rendering of figure tables.

use std::fmt::Write as _;

use crate::figures::FigureTable;

/// Fixed decimal places in every numeric CSV cell, so that re-reading a
/// file and recomputing a cell reproduces it exactly at printed precision.
pub const CSV_DECIMALS: usize = 9;

/// Formats one CSV cell.
pub fn format_cell(value: f64) -> String {
    format!("{value:.CSV_DECIMALS$}")
}

/// Renders a table as RFC-4180-style CSV: comma separators, `\n` line
/// ends, a header line, empty fields for blank cells.
pub fn render_csv(table: &FigureTable) -> String {
    let mut out = table.headers.join(",");
    out.push('\n');
    for row in &table.rows {
        let line: Vec<String> = row
            .iter()
            .map(|cell| cell.map(format_cell).unwrap_or_default())
            .collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

const CHART_WIDTH: f64 = 840.0;
const CHART_HEIGHT: f64 = 520.0;
const MARGIN_LEFT: f64 = 78.0;
const MARGIN_RIGHT: f64 = 180.0;
const MARGIN_TOP: f64 = 46.0;
const MARGIN_BOTTOM: f64 = 56.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
];

/// Renders a table as a self-contained SVG line chart: one polyline per
/// series, split where cells are blank, with axes, tick labels, and a
/// legend. No external fonts, styles, or scripts.
pub fn render_svg(table: &FigureTable) -> String {
    let plot_w = CHART_WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = CHART_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;

    let xs: Vec<f64> = table.rows.iter().filter_map(|r| r[0]).collect();
    let ys: Vec<f64> = table
        .rows
        .iter()
        .flat_map(|r| r[1..].iter().copied().flatten())
        .collect();
    let (x_min, x_max) = padded_range(&xs, 0.0);
    let (y_min, y_max) = padded_range(&ys, 0.05);
    let to_x = |v: f64| MARGIN_LEFT + (v - x_min) / (x_max - x_min) * plot_w;
    let to_y = |v: f64| MARGIN_TOP + (y_max - v) / (y_max - y_min) * plot_h;

    let mut svg = String::new();
    let _ = write!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {CHART_WIDTH} {CHART_HEIGHT}" font-family="sans-serif" font-size="13">"#
    );
    let _ = write!(
        svg,
        r#"<rect width="{CHART_WIDTH}" height="{CHART_HEIGHT}" fill="white"/>"#
    );
    let _ = write!(
        svg,
        r#"<text x="{x}" y="24" text-anchor="middle" font-size="16">{title}</text>"#,
        x = MARGIN_LEFT + plot_w / 2.0,
        title = escape(&table.title),
    );

    // Axes and ticks.
    let x0 = MARGIN_LEFT;
    let x1 = MARGIN_LEFT + plot_w;
    let y0 = MARGIN_TOP + plot_h;
    let y1 = MARGIN_TOP;
    let _ = write!(
        svg,
        r#"<path d="M {x0} {y1} L {x0} {y0} L {x1} {y0}" fill="none" stroke="black" stroke-width="1"/>"#
    );
    const TICKS: usize = 6;
    for i in 0..=TICKS {
        let t = i as f64 / TICKS as f64;
        let xv = x_min + t * (x_max - x_min);
        let yv = y_min + t * (y_max - y_min);
        let xp = to_x(xv);
        let yp = to_y(yv);
        let _ = write!(
            svg,
            r##"<line x1="{xp}" y1="{y0}" x2="{xp}" y2="{yp2}" stroke="#cccccc" stroke-width="0.5"/><line x1="{xp}" y1="{y0}" x2="{xp}" y2="{t1}" stroke="black"/><text x="{xp}" y="{ty}" text-anchor="middle">{label}</text>"##,
            yp2 = y1,
            t1 = y0 + 5.0,
            ty = y0 + 20.0,
            label = tick_label(xv),
        );
        let _ = write!(
            svg,
            r##"<line x1="{x0}" y1="{yp}" x2="{x1}" y2="{yp}" stroke="#cccccc" stroke-width="0.5"/><line x1="{t0}" y1="{yp}" x2="{x0}" y2="{yp}" stroke="black"/><text x="{tx}" y="{typ}" text-anchor="end">{label}</text>"##,
            t0 = x0 - 5.0,
            tx = x0 - 8.0,
            typ = yp + 4.0,
            label = tick_label(yv),
        );
    }
    let _ = write!(
        svg,
        r#"<text x="{x}" y="{y}" text-anchor="middle">{label}</text>"#,
        x = MARGIN_LEFT + plot_w / 2.0,
        y = CHART_HEIGHT - 14.0,
        label = escape(&table.headers[0]),
    );

    // Series polylines, split at blank cells.
    for (series, name) in table.headers[1..].iter().enumerate() {
        let color = PALETTE[series % PALETTE.len()];
        let mut segments: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
        for row in &table.rows {
            match (row[0], row[series + 1]) {
                (Some(x), Some(y)) => segments
                    .last_mut()
                    .expect("segment list starts nonempty")
                    .push((to_x(x), to_y(y))),
                _ => {
                    if !segments.last().is_some_and(Vec::is_empty) {
                        segments.push(Vec::new());
                    }
                }
            }
        }
        for segment in segments.iter().filter(|s| !s.is_empty()) {
            let points: Vec<String> = segment
                .iter()
                .map(|(x, y)| format!("{x:.2},{y:.2}"))
                .collect();
            let _ = write!(
                svg,
                r#"<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.8"/>"#,
                pts = points.join(" "),
            );
        }
        // Legend entry.
        let ly = MARGIN_TOP + 16.0 + series as f64 * 22.0;
        let lx = MARGIN_LEFT + plot_w + 16.0;
        let _ = write!(
            svg,
            r#"<line x1="{lx}" y1="{ly}" x2="{lx2}" y2="{ly}" stroke="{color}" stroke-width="2.5"/><text x="{tx}" y="{ty}">{label}</text>"#,
            lx2 = lx + 26.0,
            tx = lx + 32.0,
            ty = ly + 4.0,
            label = escape(name),
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// Data range padded by `pad` of the span on each side; degenerate
/// ranges are widened to a unit interval.
fn padded_range(values: &[f64], pad: f64) -> (f64, f64) {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !min.is_finite() || !max.is_finite() {
        return (0.0, 1.0);
    }
    if min == max {
        return (min - 0.5, max + 0.5);
    }
    let span = max - min;
    (min - pad * span, max + pad * span)
}

/// Short human-readable tick label.
fn tick_label(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if !(1e-3..1e6).contains(&a) {
        format!("{v:.2e}")
    } else {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

/// Escapes the XML-significant characters.
fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
