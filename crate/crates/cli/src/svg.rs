//! A small SVG line plot of exact values against the asymptotic envelope, with a
//! logarithmic y axis.

use std::fmt::Write;

use tiltmult::plot::PlotRow;
use tiltmult::spectral::ln_big;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

struct Series {
    label: &'static str,
    stroke: &'static str,
    dash: Option<&'static str>,
    /// `(N, log10 value)` for the positive values only.
    points: Vec<(f64, f64)>,
}

fn log10_positive(x: f64) -> Option<f64> {
    (x > 0.0 && x.is_finite()).then(|| x.log10())
}

pub fn render_svg(rows: &[PlotRow]) -> String {
    let series = build_series(rows);
    let (mut x_lo, mut x_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y_lo, mut y_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for (x, y) in series.iter().flat_map(|s| s.points.iter()) {
        x_lo = x_lo.min(*x);
        x_hi = x_hi.max(*x);
        y_lo = y_lo.min(*y);
        y_hi = y_hi.max(*y);
    }
    if !x_lo.is_finite() {
        (x_lo, x_hi, y_lo, y_hi) = (0.0, 1.0, 0.0, 1.0);
    }
    let y_lo = y_lo.floor();
    let y_hi = y_hi.ceil().max(y_lo + 1.0);
    if x_hi <= x_lo {
        x_hi = x_lo + 1.0;
    }
    let px = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * (WIDTH - LEFT - RIGHT);
    let py = |y: f64| HEIGHT - BOTTOM - (y - y_lo) / (y_hi - y_lo) * (HEIGHT - TOP - BOTTOM);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if let Some(r) = rows.first() {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="24" text-anchor="middle" font-size="14">p({}, N) for l = {} against its leading term</text>"#,
            WIDTH / 2.0,
            r.k,
            r.l
        );
    }

    // axes
    let (x0, x1, y0, y1) = (px(x_lo), px(x_hi), py(y_lo), py(y_hi));
    let _ = writeln!(s, r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y0:.2}" stroke="black"/>"#);
    let _ = writeln!(s, r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{y1:.2}" stroke="black"/>"#);
    let decades = (y_hi - y_lo) as i64;
    let y_step = (decades / 8).max(1);
    let mut e = y_lo as i64;
    while e <= y_hi as i64 {
        let y = py(e as f64);
        let _ = writeln!(s, r##"<line x1="{x0:.2}" y1="{y:.2}" x2="{x1:.2}" y2="{y:.2}" stroke="#e0e0e0"/>"##);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">1e{e}</text>"#, x0 - 6.0, y + 4.0);
        e += y_step;
    }
    let span = (x_hi - x_lo) as i64;
    let x_step = ((span + 9) / 10).max(1);
    let mut n = x_lo as i64;
    while n <= x_hi as i64 {
        let x = px(n as f64);
        let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#, y0 + 5.0);
        let _ = writeln!(s, r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{n}</text>"#, y0 + 18.0);
        n += x_step;
    }
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">N</text>"#, (x0 + x1) / 2.0, HEIGHT - 10.0);
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">value (log scale)</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );

    for (i, ser) in series.iter().enumerate() {
        let dash = ser.dash.map(|d| format!(r#" stroke-dasharray="{d}""#)).unwrap_or_default();
        if !ser.points.is_empty() {
            let pts: Vec<String> = ser.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
            let _ = writeln!(
                s,
                r#"<polyline fill="none" stroke="{}" stroke-width="1.5"{dash} points="{}"/>"#,
                ser.stroke,
                pts.join(" ")
            );
        }
        let ly = TOP + 8.0 + 16.0 * i as f64;
        let lx = LEFT + 12.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{}" stroke-width="1.5"{dash}/>"#,
            lx + 24.0,
            ser.stroke
        );
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, lx + 30.0, ly + 4.0, ser.label);
    }
    for (x, y) in &series[0].points {
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="black"/>"#, px(*x), py(*y));
    }
    s.push_str("</svg>\n");
    s
}

fn build_series(rows: &[PlotRow]) -> Vec<Series> {
    let exact = rows
        .iter()
        .filter_map(|r| {
            let ln = ln_big(&r.p_exact);
            ln.is_finite().then(|| (r.n as f64, ln / std::f64::consts::LN_10))
        })
        .collect();
    let point = |r: &PlotRow, v: f64| log10_positive(v).map(|y| (r.n as f64, y));
    vec![
        Series {
            label: "exact p(k, N)",
            stroke: "black",
            dash: None,
            points: exact,
        },
        Series {
            label: "leading term",
            stroke: "#1f77b4",
            dash: None,
            points: rows.iter().filter_map(|r| point(r, r.leading.to_f64())).collect(),
        },
        Series {
            label: "leading + error bound",
            stroke: "#d62728",
            dash: Some("5,4"),
            points: rows.iter().filter_map(|r| point(r, r.leading.to_f64() + r.error_bound.to_f64())).collect(),
        },
        Series {
            label: "leading - error bound",
            stroke: "#d62728",
            dash: Some("2,3"),
            points: rows
                .iter()
                .filter(|r| !r.leading.is_zero())
                .filter_map(|r| point(r, r.leading.to_f64() - r.error_bound.to_f64()))
                .collect(),
        },
        Series {
            label: "upper bound 2^N cos^N(pi/l)",
            stroke: "#7f7f7f",
            dash: Some("8,3,2,3"),
            points: rows.iter().filter_map(|r| point(r, r.upper_bound.to_f64())).collect(),
        },
    ]
}

