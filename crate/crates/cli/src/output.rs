//! CSV and SVG emission.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::CliError;
use crate::run::ResultTable;

/// Twelve significant digits in scientific notation.
pub fn format_value(v: f64) -> String {
    format!("{v:.11e}")
}

pub fn table_csv(table: &ResultTable) -> String {
    let mut out = table.column_names.join(",");
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|v| format_value(*v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 56.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn finite_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi > lo {
        (lo, hi)
    } else {
        let pad = if lo == 0.0 { 1.0 } else { 0.5 * lo.abs() };
        (lo - pad, hi + pad)
    }
}

/// Static line chart: first column against every other column.
pub fn table_svg(table: &ResultTable) -> String {
    let xs: Vec<f64> = table.rows.iter().map(|r| r[0]).collect();
    let (x0, x1) = finite_range(xs.iter().cloned());
    let (y0, y1) = finite_range(table.rows.iter().flat_map(|r| r.iter().skip(1).cloned()));
    let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<path d="M{m} {t} V{b} H{r}" fill="none" stroke="black"/>"#,
        m = MARGIN,
        t = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    );
    let label = |svg: &mut String, x: f64, y: f64, anchor: &str, text: &str| {
        let _ = writeln!(
            svg,
            r#"<text x="{x:.1}" y="{y:.1}" font-family="sans-serif" font-size="12" text-anchor="{anchor}">{}</text>"#,
            escape(text)
        );
    };
    label(&mut svg, MARGIN, HEIGHT - MARGIN + 16.0, "start", &format!("{x0:.4e}"));
    label(&mut svg, WIDTH - MARGIN, HEIGHT - MARGIN + 16.0, "end", &format!("{x1:.4e}"));
    label(&mut svg, MARGIN - 4.0, HEIGHT - MARGIN, "end", &format!("{y0:.3e}"));
    label(&mut svg, MARGIN - 4.0, MARGIN + 4.0, "end", &format!("{y1:.3e}"));
    label(&mut svg, WIDTH / 2.0, HEIGHT - 12.0, "middle", &table.column_names[0]);
    label(&mut svg, WIDTH / 2.0, 24.0, "middle", &table.name);

    for (k, name) in table.column_names.iter().enumerate().skip(1) {
        let color = COLORS[(k - 1) % COLORS.len()];
        let points: Vec<String> = table
            .rows
            .iter()
            .filter(|r| r[0].is_finite() && r[k].is_finite())
            .map(|r| format!("{:.2},{:.2}", px(r[0]), py(r[k])))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            points.join(" ")
        );
        let ly = MARGIN + 16.0 * k as f64;
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{ly:.1}" font-family="sans-serif" font-size="12" fill="{color}" text-anchor="end">{}</text>"#,
            WIDTH - MARGIN - 4.0,
            escape(name)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Writes `<prefix>_<table>.csv` (and `.svg` when plotting) into `dir`.
pub fn write_outputs(
    prefix: &str,
    tables: &[ResultTable],
    dir: &Path,
    plot: bool,
) -> Result<Vec<PathBuf>, CliError> {
    let mut written = Vec::new();
    if tables.is_empty() {
        return Ok(written);
    }
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    for table in tables {
        let stem = format!("{prefix}_{}", table.name);
        let csv = dir.join(format!("{stem}.csv"));
        write(&csv, &table_csv(table))?;
        written.push(csv);
        if plot {
            let svg = dir.join(format!("{stem}.svg"));
            write(&svg, &table_svg(table))?;
            written.push(svg);
        }
    }
    Ok(written)
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ResultTable {
        let mut t = ResultTable::new("demo", &["x", "y"]);
        t.push(vec![0.0, 1.0 / 3.0]);
        t.push(vec![1.0, -2.5e-7]);
        t.push(vec![2.0, 123456.789012345]);
        t
    }

    #[test]
    fn csv_has_header_and_twelve_digits() {
        let text = table_csv(&sample());
        assert_eq!(text.lines().count(), 4);
        assert!(!text.contains('\r'));
        assert_eq!(text.lines().next().unwrap(), "x,y");
        let back: f64 = text.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
        assert!((back - 1.0 / 3.0).abs() < 1e-12);
        let big: f64 = text.lines().nth(3).unwrap().split(',').nth(1).unwrap().parse().unwrap();
        assert!((big / 123456.789012345 - 1.0).abs() < 5e-12);
    }

    #[test]
    fn svg_is_static_markup() {
        let svg = table_svg(&sample());
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("<polyline"));
        assert!(!svg.contains("<script"));
        let mut single = ResultTable::new("one", &["a", "b"]);
        single.push(vec![1.0, 1.0]);
        assert!(!table_svg(&single).contains("NaN"));
    }

    #[test]
    fn empty_table_list_writes_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let target = dir.path().join("never");
        assert!(write_outputs("x", &[], &target, true).unwrap().is_empty());
        assert!(!target.exists());
    }

    #[test]
    fn unwritable_path_reports_it() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("plain");
        fs::write(&file, "x").unwrap();
        let err = write_outputs("x", &[sample()], &file.join("sub"), false).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("plain"));
    }
}
