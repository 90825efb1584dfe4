//! Minimal static SVG line plots: fixed 800×600 viewBox, linear axes,
//! optional peak/valley markers. Convenience output only.

use std::fmt::Write as _;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 70.0;

struct Scale {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Scale {
    fn of(points: &[(f64, f64)]) -> Scale {
        let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
        for &(x, y) in points {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if x1 == x0 {
            x1 = x0 + 1.0;
        }
        if y1 == y0 {
            y1 = y0 + 1.0;
        }
        Scale { x0, x1, y0, y1 }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2.0 * MARGIN)
    }
}

/// Render an I-V polyline with optional peak (red) and valley (blue)
/// markers.
pub fn iv_plot(
    points: &[(f64, f64)],
    peak: Option<(f64, f64)>,
    valley: Option<(f64, f64)>,
    title: &str,
) -> String {
    let sc = Scale::of(points);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="30" text-anchor="middle" font-family="sans-serif" font-size="18">{title}</text>"#,
        WIDTH / 2.0
    );
    // axes
    let _ = writeln!(
        svg,
        r#"<line x1="{m}" y1="{b}" x2="{r}" y2="{b}" stroke="black"/><line x1="{m}" y1="{t}" x2="{m}" y2="{b}" stroke="black"/>"#,
        m = MARGIN,
        r = WIDTH - MARGIN,
        t = MARGIN,
        b = HEIGHT - MARGIN
    );
    // ticks
    for k in 0..=4 {
        let fx = sc.x0 + (sc.x1 - sc.x0) * k as f64 / 4.0;
        let fy = sc.y0 + (sc.y1 - sc.y0) * k as f64 / 4.0;
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12">{fx:.4}</text>"#,
            sc.px(fx),
            HEIGHT - MARGIN + 20.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{:.2}" text-anchor="end" font-family="sans-serif" font-size="12">{fy:.4}</text>"#,
            MARGIN - 8.0,
            sc.py(fy) + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="14">V (mV)</text>"#,
        WIDTH / 2.0,
        HEIGHT - 20.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="20" y="{}" text-anchor="middle" font-family="sans-serif" font-size="14" transform="rotate(-90 20 {})">I (2e/h · meV)</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
    // data
    let mut path = String::new();
    for &(x, y) in points {
        let _ = write!(path, "{:.3},{:.3} ", sc.px(x), sc.py(y));
    }
    let _ = writeln!(
        svg,
        r#"<polyline points="{}" fill="none" stroke="steelblue" stroke-width="1.5"/>"#,
        path.trim_end()
    );
    for (marker, color) in [(peak, "crimson"), (valley, "royalblue")] {
        if let Some((x, y)) = marker {
            let _ = writeln!(
                svg,
                r#"<circle cx="{:.3}" cy="{:.3}" r="5" fill="{color}"/>"#,
                sc.px(x),
                sc.py(y)
            );
        }
    }
    svg.push_str("</svg>\n");
    svg
}
