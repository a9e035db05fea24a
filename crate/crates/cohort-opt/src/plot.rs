//! Convergence plots: behavior of every candidate against learning attempt.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::export::{TraceCsvRow, TRACE_COLUMNS};

/// Failure to read a trace or write a plot.
#[derive(Debug, thiserror::Error)]
pub enum PlotError {
    /// Filesystem failure.
    #[error("{}: {source}", path.display())]
    Io {
        /// File path.
        path: PathBuf,
        /// Underlying error.
        source: std::io::Error,
    },
    /// A row could not be parsed.
    #[error("{}:{line}: {message}", path.display())]
    Malformed {
        /// File path.
        path: PathBuf,
        /// 1-based line number.
        line: u64,
        /// What is wrong.
        message: String,
    },
    /// The trace has no rows.
    #[error("{}: trace is empty", path.display())]
    Empty {
        /// File path.
        path: PathBuf,
    },
}

/// Behavior series of each candidate: `(attempt, f_q)` in file order.
pub type Series = BTreeMap<usize, Vec<(u64, f64)>>;

/// Reads a trace file into per-candidate series.
pub fn read_trace(path: &Path) -> Result<Series, PlotError> {
    let text = std::fs::read_to_string(path).map_err(|source| PlotError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_trace(&text, path)
}

fn parse_trace(text: &str, path: &Path) -> Result<Series, PlotError> {
    let malformed = |line: u64, message: String| PlotError::Malformed {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| malformed(1, e.to_string()))?
        .clone();
    if headers.is_empty() {
        return Err(PlotError::Empty {
            path: path.to_path_buf(),
        });
    }
    if headers.iter().ne(TRACE_COLUMNS) {
        return Err(malformed(
            1,
            format!("expected header `{}`", TRACE_COLUMNS.join(",")),
        ));
    }
    let mut series = Series::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            malformed(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != TRACE_COLUMNS.len() {
            return Err(malformed(
                line,
                format!(
                    "expected {} fields, found {}",
                    TRACE_COLUMNS.len(),
                    record.len()
                ),
            ));
        }
        let row: TraceCsvRow = record
            .deserialize(Some(&headers))
            .map_err(|e| malformed(line, e.to_string()))?;
        if !row.f_q.is_finite() {
            return Err(malformed(line, format!("f_q is not finite: {}", row.f_q)));
        }
        series
            .entry(row.candidate)
            .or_default()
            .push((row.attempt, row.f_q));
    }
    if series.is_empty() {
        return Err(PlotError::Empty {
            path: path.to_path_buf(),
        });
    }
    Ok(series)
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// Renders the series as an SVG document with one polyline per candidate.
pub fn render_svg(series: &Series, title: &str) -> String {
    let points = series.values().flatten();
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for &(a, f) in points {
        x0 = x0.min(a as f64);
        x1 = x1.max(a as f64);
        y0 = y0.min(f);
        y1 = y1.max(f);
    }
    if x1 <= x0 {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if y1 <= y0 {
        let pad = if y0 == 0.0 { 1.0 } else { y0.abs() * 1e-3 };
        y0 -= pad;
        y1 += pad;
    }
    let sx = |a: f64| MARGIN + (a - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |f: f64| HEIGHT - MARGIN - (f - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" text-anchor="middle" font-family="sans-serif" font-size="16">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    let (l, r, t, b) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        svg,
        r#"<path d="M{l} {t} L{l} {b} L{r} {b}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12">learning attempt</text>"#,
        WIDTH / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="15" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12" transform="rotate(-90 15 {})">behavior f_q</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
    for (v, y) in [(y0, b), (y1, t)] {
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{y}" text-anchor="end" font-family="sans-serif" font-size="10">{}</text>"#,
            l - 4.0,
            fmt_tick(v)
        );
    }
    for (v, x) in [(x0, l), (x1, r)] {
        let _ = writeln!(
            svg,
            r#"<text x="{x}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="10">{}</text>"#,
            b + 14.0,
            fmt_tick(v)
        );
    }
    for (i, (cand, pts)) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let coords: Vec<String> = pts
            .iter()
            .map(|&(a, f)| format!("{:.2},{:.2}", sx(a as f64), sy(f)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline class="candidate" data-candidate="{cand}" fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            coords.join(" ")
        );
        if let [(a, f)] = pts[..] {
            let _ = writeln!(
                svg,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#,
                sx(a as f64),
                sy(f)
            );
        }
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="10" fill="{color}">candidate {cand}</text>"#,
            r - 70.0,
            t + 12.0 * (i as f64 + 1.0)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn fmt_tick(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e5 || v.abs() < 1e-3) {
        format!("{v:.3e}")
    } else {
        format!("{v:.4}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Reads `trace` and writes its plot to `out`. Nothing is written when the
/// trace is empty or malformed.
pub fn plot_trace(trace: &Path, out: &Path) -> Result<usize, PlotError> {
    let series = read_trace(trace)?;
    let title = trace
        .file_stem()
        .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    std::fs::write(out, render_svg(&series, &title)).map_err(|source| PlotError::Io {
        path: out.to_path_buf(),
        source,
    })?;
    Ok(series.len())
}
