//! Report rows and their CSV / SVG renderings.
//!
//! CSV schema: `n,re_z,im_z,t_star,re_pi,im_pi,dist_w_pi,delta`, UTF-8,
//! LF line endings, floats with 17 significant digits. `t_star` and the
//! `pi` columns are empty for scenarios without a curve; `delta` is the
//! consecutive difference of `dist_w_pi` and is empty on the first row.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::Context;
use hyproj_core::Complex;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub n: u64,
    pub z: Complex,
    pub t_star: Option<f64>,
    pub pi: Option<Complex>,
    pub dist: f64,
    pub delta: Option<f64>,
}

/// Outcome shared by every scenario runner.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub scenario: String,
    pub rows: Vec<Row>,
    pub pass: bool,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityReport {
    pub out: RunOutput,
    /// `d_H(w, pi_n)` per row.
    pub values: Vec<f64>,
    /// Non-increasing adjacent pairs `(n, delta)`.
    pub violations: Vec<(u64, f64)>,
    /// Smallest `N` with strict increase for all `n >= N` in range.
    pub first_increase: Option<u64>,
    /// Mean of the last-quartile increments.
    pub increment_tail: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosenessReport {
    pub out: RunOutput,
    /// `d_H(pi_1(n), pi_2(n))` per row.
    pub gaps: Vec<f64>,
    /// `|z_n|` per row (the gate variable).
    pub abs_z: Vec<f64>,
    /// Mean gap over the declared tail window.
    pub tail_value: f64,
    /// Expected limit: 0 for equal slopes, `dist_angles` otherwise.
    pub target: f64,
}

/// 17 significant digits, deterministic across runs and platforms.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

pub fn csv_string(rows: &[Row]) -> String {
    let mut s = String::from("n,re_z,im_z,t_star,re_pi,im_pi,dist_w_pi,delta\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            r.n,
            fmt_f64(r.z.re),
            fmt_f64(r.z.im),
            opt(r.t_star),
            opt(r.pi.map(|p| p.re)),
            opt(r.pi.map(|p| p.im)),
            fmt_f64(r.dist),
            opt(r.delta),
        );
    }
    s
}

pub fn write_csv(rows: &[Row], path: &Path) -> anyhow::Result<()> {
    std::fs::write(path, csv_string(rows))
        .with_context(|| format!("writing CSV to {}", path.display()))
}

/// Line chart of `dist_w_pi` against `n` as a standalone SVG.
pub fn svg_string(rows: &[Row], title: &str) -> String {
    const W: f64 = 720.0;
    const H: f64 = 440.0;
    const ML: f64 = 70.0;
    const MR: f64 = 20.0;
    const MT: f64 = 40.0;
    const MB: f64 = 50.0;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{title}</text>"#,
        W / 2.0
    );
    if rows.is_empty() {
        let _ = writeln!(s, "</svg>");
        return s;
    }
    let n_lo = rows.first().unwrap().n as f64;
    let n_hi = rows.last().unwrap().n as f64;
    let (mut v_lo, mut v_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for r in rows {
        v_lo = v_lo.min(r.dist);
        v_hi = v_hi.max(r.dist);
    }
    if v_hi - v_lo < 1e-12 {
        v_hi = v_lo + 1.0;
    }
    let x = |n: f64| ML + (n - n_lo) / (n_hi - n_lo).max(1.0) * (W - ML - MR);
    let y = |v: f64| H - MB - (v - v_lo) / (v_hi - v_lo) * (H - MT - MB);

    // Axes with end labels.
    let _ = writeln!(
        s,
        r#"<line x1="{ML}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        H - MB,
        W - MR,
        H - MB
    );
    let _ = writeln!(s, r#"<line x1="{ML}" y1="{MT}" x2="{ML}" y2="{}" stroke="black"/>"#, H - MB);
    for (v, anchor_y) in [(v_lo, H - MB), (v_hi, MT)] {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="end">{:.6}</text>"#,
            ML - 6.0,
            anchor_y + 4.0,
            v
        );
    }
    for n in [n_lo, n_hi] {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">{n}</text>"#,
            x(n),
            H - MB + 18.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">n</text>"#,
        (ML + W - MR) / 2.0,
        H - 12.0
    );

    let mut pts = String::new();
    for r in rows {
        let _ = write!(pts, "{:.2},{:.2} ", x(r.n as f64), y(r.dist));
    }
    let _ = writeln!(
        s,
        r##"<polyline points="{}" fill="none" stroke="#1f6fb2" stroke-width="1.5"/>"##,
        pts.trim_end()
    );
    for r in rows {
        let _ = writeln!(
            s,
            r##"<circle cx="{:.2}" cy="{:.2}" r="2.4" fill="#1f6fb2"/>"##,
            x(r.n as f64),
            y(r.dist)
        );
    }
    let _ = writeln!(s, "</svg>");
    s
}

pub fn write_plot(rows: &[Row], title: &str, path: &Path) -> anyhow::Result<()> {
    std::fs::write(path, svg_string(rows, title))
        .with_context(|| format!("writing plot to {}", path.display()))
}

/// Fill the delta column from consecutive `dist` values.
pub fn fill_deltas(rows: &mut [Row]) {
    for i in 1..rows.len() {
        rows[i].delta = Some(rows[i].dist - rows[i - 1].dist);
    }
    if let Some(first) = rows.first_mut() {
        first.delta = None;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_schema() {
        let mut rows = vec![
            Row {
                n: 0,
                z: Complex::new(1.0, 2.0),
                t_star: Some(0.5),
                pi: Some(Complex::new(1.5, 0.0)),
                dist: 0.25,
                delta: None,
            },
            Row {
                n: 1,
                z: Complex::new(2.0, 4.0),
                t_star: Some(1.5),
                pi: Some(Complex::new(3.0, 0.0)),
                dist: 0.75,
                delta: None,
            },
        ];
        fill_deltas(&mut rows);
        let text = csv_string(&rows);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "n,re_z,im_z,t_star,re_pi,im_pi,dist_w_pi,delta");
        let first = lines.next().unwrap();
        assert!(first.ends_with(','), "delta empty on first row: {first}");
        let second = lines.next().unwrap();
        assert!(second.ends_with(&fmt_f64(0.5)), "delta filled: {second}");
        assert!(!text.contains('\r'));
        // 17 significant digits.
        assert!(text.contains("2.5000000000000000e-1"));
    }

    #[test]
    fn svg_smoke() {
        let rows = vec![Row {
            n: 0,
            z: Complex::new(1.0, 0.0),
            t_star: None,
            pi: None,
            dist: 1.0,
            delta: None,
        }];
        let svg = svg_string(&rows, "test");
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    }
}
