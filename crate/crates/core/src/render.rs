//! Text, CSV, JSON and SVG renderings of the top of the triangle.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::geometry::PointSet;
use crate::triangle::{GridPoint, TriangleWindow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Ascii,
    Csv,
    Json,
    Svg,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ascii" => Ok(Format::Ascii),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            _ => Err(format!(
                "unknown format `{s}` (expected ascii, csv, json or svg)"
            )),
        }
    }
}

/// Lattice spacing of the SVG layout, in user units.
pub const SVG_SPACING: f64 = 48.0;

#[derive(Debug, Clone)]
pub struct RenderOptions {
    /// Last row drawn; rows `0..=rows` are rendered.
    pub rows: u32,
    pub format: Format,
    pub highlight: Option<PointSet>,
}

impl RenderOptions {
    pub fn new(rows: u32, format: Format) -> Self {
        Self {
            rows,
            format,
            highlight: None,
        }
    }

    pub fn highlight(mut self, points: PointSet) -> Self {
        self.highlight = Some(points);
        self
    }
}

pub fn render(opts: &RenderOptions) -> String {
    let window = TriangleWindow::new(0, opts.rows);
    let marked: HashSet<GridPoint> = opts.highlight.iter().flat_map(|set| set.coords()).collect();
    match opts.format {
        Format::Ascii => ascii(&window, &marked),
        Format::Csv => csv(&window),
        Format::Json => json(&window),
        Format::Svg => svg(&window, &marked),
    }
}

fn csv(window: &TriangleWindow) -> String {
    let mut out = String::new();
    for row in &window.rows {
        let line: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

fn json(window: &TriangleWindow) -> String {
    let rows: Vec<Vec<String>> = window
        .rows
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect();
    let mut out = serde_json::to_string(&rows).expect("string lists serialize");
    out.push('\n');
    out
}

/// Centred text layout. Highlighted entries are wrapped in brackets.
fn ascii(window: &TriangleWindow, marked: &HashSet<GridPoint>) -> String {
    let width = window
        .rows
        .iter()
        .flatten()
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1);
    // Each cell is the widest number plus a bracket on either side, and
    // neighbouring rows are offset by half a cell.
    let cell = width + 2;
    let last = window.last_row as usize;
    let mut out = String::new();
    for (r, row) in window.rows.iter().enumerate() {
        let mut line = " ".repeat((last - r) * (cell + 1) / 2);
        for (k, v) in row.iter().enumerate() {
            if k > 0 {
                line.push(' ');
            }
            let p = GridPoint::new(r as i64, k as i64).expect("row coordinate");
            let text = if marked.contains(&p) {
                format!("[{v}]")
            } else {
                v.to_string()
            };
            let _ = write!(line, "{text:^cell$}");
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Entry `(r, k)` is centred at `x = (k - r/2) Δ`, `y = r Δ`, shifted so the
/// drawing starts at the origin.
fn svg(window: &TriangleWindow, marked: &HashSet<GridPoint>) -> String {
    let d = SVG_SPACING;
    let last = f64::from(window.last_row);
    let margin = d;
    let x_of = |p: GridPoint| (p.k() as f64 - p.r() as f64 / 2.0) * d + last / 2.0 * d + margin;
    let y_of = |p: GridPoint| p.r() as f64 * d + margin;
    let width = last * d + 2.0 * margin;
    let height = last * d + 2.0 * margin;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="monospace" font-size="12" text-anchor="middle">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (r, row) in window.rows.iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            let p = GridPoint::new(r as i64, k as i64).expect("row coordinate");
            let (x, y) = (x_of(p), y_of(p));
            if marked.contains(&p) {
                let _ = writeln!(
                    out,
                    r##"<circle class="highlight" data-r="{r}" data-k="{k}" cx="{x}" cy="{y}" r="{rad}" fill="#ffd54f" stroke="#e65100"/>"##,
                    rad = d * 0.42
                );
            }
            let _ = writeln!(
                out,
                r#"<text class="entry" data-r="{r}" data-k="{k}" x="{x}" y="{ty}">{v}</text>"#,
                ty = y + 4.0
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
