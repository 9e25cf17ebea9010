//! Static SVG plot of a Newton polygon.

use std::fmt::Write;

use edcert_core::NewtonPolygon;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;

/// Renders the support points as circles and the lower hull as a polyline
/// in a 640×480 viewport. Output depends only on the polygon.
pub fn render(polygon: &NewtonPolygon, title: &str) -> String {
    let points = polygon.points();
    let max_i = points.iter().map(|p| p.0).max().unwrap_or(0).max(1) as f64;
    let lo = points.iter().map(|p| p.1).min().unwrap_or(0).min(0);
    let hi = points.iter().map(|p| p.1).max().unwrap_or(0).max(lo + 1);
    let (lo, hi) = (lo as f64, hi as f64);
    let sx = |i: f64| MARGIN + i / max_i * (WIDTH - 2.0 * MARGIN);
    let sy = |v: f64| HEIGHT - MARGIN - (v - lo) / (hi - lo) * (HEIGHT - 2.0 * MARGIN);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="640" height="480" viewBox="0 0 640 480">"#
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(out, r#"<rect width="640" height="480" fill="white"/>"#);
    let (x0, y0) = (sx(0.0), sy(lo));
    let _ = writeln!(
        out,
        r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{:.2}" y2="{y0:.2}" stroke="black"/>"#,
        WIDTH - MARGIN / 2.0
    );
    let _ = writeln!(
        out,
        r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{:.2}" stroke="black"/>"#,
        MARGIN / 2.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14">i</text>"#,
        WIDTH - MARGIN / 2.0 + 4.0,
        y0 + 5.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14">v(a_i)</text>"#,
        x0 - 20.0,
        MARGIN / 2.0 - 8.0
    );
    for i in 0..=max_i as usize {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="10" text-anchor="middle">{i}</text>"#,
            sx(i as f64),
            y0 + 16.0
        );
    }
    for v in lo as i64..=hi as i64 {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="10" text-anchor="end">{v}</text>"#,
            x0 - 6.0,
            sy(v as f64) + 3.0
        );
    }
    let hull: Vec<String> = polygon
        .vertices()
        .iter()
        .map(|&(i, v)| format!("{:.2},{:.2}", sx(i as f64), sy(v as f64)))
        .collect();
    let _ = writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="steelblue" stroke-width="2"/>"#,
        hull.join(" ")
    );
    for &(i, v) in points {
        let _ = writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="black"/>"#,
            sx(i as f64),
            sy(v as f64)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use edcert_core::{newton_polygon, FormalPoly, PAdic};

    #[test]
    fn deterministic_and_well_formed() {
        let a = FormalPoly::from_ints(&[8, 4, 1]);
        let poly = newton_polygon(&a, &PAdic::new(2).unwrap()).unwrap();
        let first = render(&poly, "x^2 + 4x + 8 at v_2");
        assert_eq!(first, render(&poly, "x^2 + 4x + 8 at v_2"));
        assert!(first.contains(r#"width="640" height="480""#));
        assert_eq!(first.matches("<circle").count(), 3);
        assert_eq!(first.matches("<polyline").count(), 1);
        assert!(first.contains(">i</text>") && first.contains(">v(a_i)</text>"));
        assert!(first.trim_end().ends_with("</svg>"));
    }
}
