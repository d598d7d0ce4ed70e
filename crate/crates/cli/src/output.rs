//! CSV and SVG rendering of a result table.

use crate::config::Scenario;
use crate::runner::Table;
use std::fmt::Write as _;

/// `#`-prefixed effective configuration, the column header, then rows with
/// 12 significant digits.
pub fn to_csv(scenario: &Scenario, table: &Table) -> String {
    let mut out = String::new();
    for line in scenario.to_config_text().lines() {
        let _ = writeln!(out, "# {line}");
    }
    for (x, why) in &table.skipped {
        let _ = writeln!(out, "# skipped {x:?}: {why}");
    }
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.11e}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;
const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
const TICKS: usize = 5;

/// Line plot of every column against the first.
pub fn to_svg(title: &str, table: &Table) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(svg, r#"<text x="{}" y="20" text-anchor="middle">{}</text>"#, WIDTH / 2.0, escape(title));
    if table.rows.is_empty() {
        svg.push_str("</svg>\n");
        return svg;
    }

    let xs = || table.rows.iter().map(|r| r[0]);
    let ys = || table.rows.iter().flat_map(|r| r[1..].iter().copied());
    let (x0, x1) = padded(bounds(xs()));
    let (y0, y1) = padded(bounds(ys()));
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN / 2.0, MARGIN / 2.0, HEIGHT - MARGIN);
    let px = |x: f64| left + (x - x0) / (x1 - x0) * (right - left);
    let py = |y: f64| bottom - (y - y0) / (y1 - y0) * (bottom - top);

    let _ = writeln!(
        svg,
        r#"<polyline points="{left},{top} {left},{bottom} {right},{bottom}" fill="none" stroke="black"/>"#
    );
    for i in 0..=TICKS {
        let f = i as f64 / TICKS as f64;
        let (x, y) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
        let _ = writeln!(
            svg,
            r#"<line x1="{0}" y1="{bottom}" x2="{0}" y2="{1}" stroke="black"/><text x="{0}" y="{2}" text-anchor="middle">{3}</text>"#,
            px(x),
            bottom + 5.0,
            bottom + 20.0,
            tick_label(x)
        );
        let _ = writeln!(
            svg,
            r#"<line x1="{0}" y1="{1}" x2="{left}" y2="{1}" stroke="black"/><text x="{2}" y="{3}" text-anchor="end">{4}</text>"#,
            left - 5.0,
            py(y),
            left - 8.0,
            py(y) + 4.0,
            tick_label(y)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        (left + right) / 2.0,
        HEIGHT - 15.0,
        table.columns[0]
    );

    for (c, name) in table.columns.iter().enumerate().skip(1) {
        let color = PALETTE[(c - 1) % PALETTE.len()];
        let points: Vec<String> = table
            .rows
            .iter()
            .map(|r| format!("{:.2},{:.2}", px(r[0]), py(r[c])))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            points.join(" ")
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" fill="{color}" text-anchor="end">{name}</text>"#,
            right - 5.0,
            top + 15.0 * c as f64
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

fn padded((lo, hi): (f64, f64)) -> (f64, f64) {
    if hi > lo {
        let pad = 0.05 * (hi - lo);
        (lo - pad, hi + pad)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

fn tick_label(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-2 || v.abs() >= 1e4) {
        format!("{v:.1e}")
    } else {
        format!("{v:.2}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Table {
        Table {
            columns: vec!["z_over_lambda", "gamma_over_gamma0"],
            rows: vec![vec![0.0, 1.25], vec![0.5, 1.0 / 3.0]],
            skipped: vec![(0.4, "shift diverges on plane".into())],
        }
    }

    #[test]
    fn csv_layout() {
        let s = Scenario::parse("mode = transmission\n[medium]\nd_eff = 0.23\n").unwrap();
        let csv = to_csv(&s, &table());
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines.iter().take_while(|l| l.starts_with('#')).count() > 3);
        assert!(csv.contains("# skipped 0.4: shift diverges on plane"));
        assert!(csv.contains("z_over_lambda,gamma_over_gamma0\n"));
        assert!(csv.ends_with("5.00000000000e-1,3.33333333333e-1\n"));
    }

    #[test]
    fn svg_has_one_polyline_per_series() {
        let svg = to_svg("a < b", &table());
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains("a &lt; b"));
    }
}
