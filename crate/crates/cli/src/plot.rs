//! SVG wall diagrams: beta horizontal, alpha vertical, one labeled
//! semicircle per wall, the nu = 0 locus dashed.
//!
//! This is the single place where exact rationals become floating point;
//! everything upstream stays in Q.

use std::fmt::Write;

pub struct PlotWall {
    pub center: f64,
    pub radius: f64,
    pub label: String,
}

const WIDTH: f64 = 720.0;
const MARGIN: f64 = 48.0;
const LABEL_SPACE: f64 = 20.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#e07b00", "#17becf",
];

fn esc(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn render_svg(walls: &[PlotWall], nu0: Option<f64>, title: &str) -> String {
    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut r_max: f64 = 0.0;
    for w in walls {
        x_min = x_min.min(w.center - w.radius);
        x_max = x_max.max(w.center + w.radius);
        r_max = r_max.max(w.radius);
    }
    if let Some(x) = nu0 {
        x_min = x_min.min(x);
        x_max = x_max.max(x);
    }
    if walls.is_empty() {
        x_min = -1.0;
        x_max = 1.0;
        r_max = 1.0;
    }
    let pad = 0.08 * (x_max - x_min).max(0.5);
    x_min -= pad;
    x_max += pad;
    let y_max = r_max * 1.12;

    // uniform scale keeps circles circular
    let scale = (WIDTH - 2.0 * MARGIN) / (x_max - x_min);
    let height = y_max * scale + MARGIN + LABEL_SPACE + MARGIN;
    let base_y = height - MARGIN;
    let x_px = |x: f64| MARGIN + (x - x_min) * scale;
    let y_px = |y: f64| base_y - y * scale;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r##"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH:.0}" height="{height:.0}" viewBox="0 0 {WIDTH:.0} {height:.0}">"##
    );
    let _ = writeln!(
        svg,
        r##"  <rect width="100%" height="100%" fill="white"/>"##
    );
    let _ = writeln!(
        svg,
        r##"  <text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"##,
        WIDTH / 2.0,
        MARGIN / 2.0 + 4.0,
        esc(title)
    );

    // beta axis with end and zero ticks
    let _ = writeln!(
        svg,
        r##"  <line x1="{:.1}" y1="{base_y:.1}" x2="{:.1}" y2="{base_y:.1}" stroke="#333" stroke-width="1"/>"##,
        x_px(x_min),
        x_px(x_max)
    );
    let mut ticks = vec![x_min + pad, x_max - pad];
    if x_min < 0.0 && x_max > 0.0 {
        ticks.push(0.0);
    }
    for t in ticks {
        let _ = writeln!(
            svg,
            r##"  <line x1="{0:.1}" y1="{1:.1}" x2="{0:.1}" y2="{2:.1}" stroke="#333" stroke-width="1"/>"##,
            x_px(t),
            base_y - 3.0,
            base_y + 3.0
        );
        let _ = writeln!(
            svg,
            r##"  <text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="10" text-anchor="middle">{:.3}</text>"##,
            x_px(t),
            base_y + 14.0,
            t
        );
    }
    let _ = writeln!(
        svg,
        r##"  <text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="end">beta</text>"##,
        x_px(x_max),
        base_y - 6.0
    );

    // alpha axis at beta = 0 when visible, else at the left edge
    let alpha_x = if x_min < 0.0 && x_max > 0.0 { 0.0 } else { x_min + pad / 2.0 };
    let _ = writeln!(
        svg,
        r##"  <line x1="{0:.1}" y1="{base_y:.1}" x2="{0:.1}" y2="{1:.1}" stroke="#999" stroke-width="0.7"/>"##,
        x_px(alpha_x),
        y_px(y_max)
    );
    let _ = writeln!(
        svg,
        r##"  <text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12">alpha</text>"##,
        x_px(alpha_x) + 4.0,
        y_px(y_max) + 10.0
    );

    // nu = 0 locus
    if let Some(x) = nu0 {
        let _ = writeln!(
            svg,
            r##"  <line x1="{0:.1}" y1="{base_y:.1}" x2="{0:.1}" y2="{1:.1}" stroke="#555" stroke-width="1" stroke-dasharray="6 4"/>"##,
            x_px(x),
            y_px(y_max)
        );
        let _ = writeln!(
            svg,
            r##"  <text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="10" text-anchor="middle">nu = 0</text>"##,
            x_px(x),
            y_px(y_max) - 4.0
        );
    }

    // walls, annotated at their top points
    for (i, w) in walls.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let r_px = w.radius * scale;
        let _ = writeln!(
            svg,
            r##"  <path d="M {:.2} {base_y:.2} A {r_px:.2} {r_px:.2} 0 0 1 {:.2} {base_y:.2}" fill="none" stroke="{color}" stroke-width="1.6"/>"##,
            x_px(w.center - w.radius),
            x_px(w.center + w.radius)
        );
        let label_y = y_px(w.radius) - 5.0 - (i % 3) as f64 * 12.0;
        let _ = writeln!(
            svg,
            r##"  <text x="{:.1}" y="{label_y:.1}" font-family="sans-serif" font-size="11" text-anchor="middle" fill="{color}">{}</text>"##,
            x_px(w.center),
            esc(&w.label)
        );
    }

    svg.push_str("</svg>\n");
    svg
}
