//! Text serializations of sampled trajectories.

use std::fmt::Write as _;

/// One sample row: `t, x, z, x', z'`.
pub type Row = [f64; 5];

pub const CSV_HEADER: &str = "t,x,z,x_prime,z_prime";

/// Formats a number with 17 significant digits, enough to round-trip any
/// `f64` exactly.
pub fn number(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn csv(rows: &[Row]) -> String {
    let mut out = String::with_capacity(rows.len() * 120);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let line: Vec<String> = row.iter().map(|&v| number(v)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Parses the output of [`csv`] back into rows.
pub fn parse_csv(text: &str) -> Result<Vec<Row>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(CSV_HEADER) => {}
        other => return Err(format!("unexpected header {other:?}")),
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 5 {
                return Err(format!("line {}: expected 5 fields, got {}", i + 2, fields.len()));
            }
            let mut row = [0.0; 5];
            for (slot, field) in row.iter_mut().zip(fields) {
                *slot = field
                    .parse()
                    .map_err(|e| format!("line {}: {field:?}: {e}", i + 2))?;
            }
            Ok(row)
        })
        .collect()
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN: f64 = 60.0;

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 * (1.0 + lo.abs()) {
        // flat curves still get a visible band
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn label(v: f64) -> String {
    format!("{v:.4}")
}

/// Static SVG 1.1 drawing of the `(x, z)` path with a frame, axis names
/// and the extreme values on each axis.
pub fn svg(rows: &[Row], title: &str) -> String {
    let (x_lo, x_hi) = bounds(rows.iter().map(|r| r[1]));
    let (z_lo, z_hi) = bounds(rows.iter().map(|r| r[2]));
    let plot_w = WIDTH - 2.0 * MARGIN;
    let plot_h = HEIGHT - 2.0 * MARGIN;
    let sx = |x: f64| MARGIN + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let sz = |z: f64| HEIGHT - MARGIN - (z - z_lo) / (z_hi - z_lo) * plot_h;

    let mut points = String::with_capacity(rows.len() * 20);
    for (i, r) in rows.iter().enumerate() {
        if i > 0 {
            points.push(' ');
        }
        let _ = write!(points, "{:.3},{:.3}", sx(r[1]), sz(r[2]));
    }

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, "  <title>{}</title>", escape(title));
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"  <rect x="{MARGIN}" y="{MARGIN}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black" stroke-width="1"/>"#
    );
    let bottom = HEIGHT - MARGIN;
    let right = WIDTH - MARGIN;
    let text = |out: &mut String, x: f64, y: f64, anchor: &str, body: &str| {
        let _ = writeln!(
            out,
            r#"  <text x="{x}" y="{y}" font-family="sans-serif" font-size="12" text-anchor="{anchor}">{}</text>"#,
            escape(body)
        );
    };
    text(&mut out, MARGIN, bottom + 18.0, "start", &label(x_lo));
    text(&mut out, right, bottom + 18.0, "end", &label(x_hi));
    text(&mut out, WIDTH / 2.0, bottom + 40.0, "middle", "x");
    text(&mut out, MARGIN - 6.0, bottom, "end", &label(z_lo));
    text(&mut out, MARGIN - 6.0, MARGIN + 12.0, "end", &label(z_hi));
    text(&mut out, MARGIN - 40.0, HEIGHT / 2.0, "middle", "z");
    text(&mut out, WIDTH / 2.0, MARGIN - 20.0, "middle", title);
    let _ = writeln!(
        out,
        r#"  <polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{points}"/>"#
    );
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
