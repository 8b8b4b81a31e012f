//! Barcode plots as hand-written SVG.
//!
//! Layout constants: 900px wide, 60px left and 40px right margins, 40px top
//! margin, 4px bars on a 6px pitch, 50px below the last bar for the axis.

use std::fmt::Write as _;

use crate::persistence::PersistenceDiagram;

const WIDTH: f64 = 900.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 40.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const BAR: f64 = 4.0;
const PITCH: f64 = 6.0;
const ARROW: f64 = 8.0;

pub fn dimension_color(dim: usize) -> &'static str {
    match dim {
        0 => "#d62728",
        1 => "#1f77b4",
        2 => "#2ca02c",
        _ => "#7f7f7f",
    }
}

/// Draws one bar per pair, dimension 0 on top. Bars that outlive
/// `axis_max` (including infinite ones) end at the right edge with an
/// arrowhead; bars born after `axis_max` are omitted.
pub fn render_barcode_svg(diagram: &PersistenceDiagram, axis_max: f64, title: &str) -> String {
    let bars: Vec<_> = diagram.pairs.iter().filter(|p| p.birth <= axis_max).collect();
    let plot_width = WIDTH - LEFT - RIGHT;
    let height = TOP + bars.len().max(1) as f64 * PITCH + BOTTOM;
    let x = |t: f64| LEFT + t.min(axis_max) / axis_max * plot_width;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{height}\" viewBox=\"0 0 {WIDTH} {height}\" font-family=\"sans-serif\" font-size=\"12\">"
    );
    let _ = writeln!(svg, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    let _ = writeln!(svg, "<text x=\"{LEFT}\" y=\"20\" font-size=\"14\">{}</text>", escape(title));

    for (row, p) in bars.iter().enumerate() {
        let y = TOP + row as f64 * PITCH;
        let color = dimension_color(p.dimension);
        let (x0, x1) = (x(p.birth), x(p.death));
        let _ = writeln!(
            svg,
            "<rect class=\"bar dim{}\" x=\"{x0:.3}\" y=\"{y:.1}\" width=\"{:.3}\" height=\"{BAR}\" fill=\"{color}\"/>",
            p.dimension,
            (x1 - x0).max(0.5)
        );
        if p.death > axis_max {
            let mid = y + BAR / 2.0;
            let _ = writeln!(
                svg,
                "<polygon class=\"arrow dim{}\" points=\"{:.3},{:.1} {:.3},{:.1} {:.3},{:.1}\" fill=\"{color}\"/>",
                p.dimension,
                x1,
                mid - ARROW / 2.0,
                x1 + ARROW,
                mid,
                x1,
                mid + ARROW / 2.0
            );
        }
    }

    let axis_y = TOP + bars.len().max(1) as f64 * PITCH + 10.0;
    let _ = writeln!(
        svg,
        "<line x1=\"{LEFT}\" y1=\"{axis_y}\" x2=\"{:.3}\" y2=\"{axis_y}\" stroke=\"black\"/>",
        LEFT + plot_width
    );
    let step = tick_step(axis_max);
    let mut tick = 0.0;
    while tick <= axis_max + 1e-12 {
        let tx = x(tick);
        let _ = writeln!(
            svg,
            "<line x1=\"{tx:.3}\" y1=\"{axis_y}\" x2=\"{tx:.3}\" y2=\"{:.1}\" stroke=\"black\"/><text x=\"{tx:.3}\" y=\"{:.1}\" text-anchor=\"middle\">{}</text>",
            axis_y + 5.0,
            axis_y + 18.0,
            trim_tick(tick)
        );
        tick += step;
    }
    let _ = writeln!(
        svg,
        "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">t</text>",
        LEFT + plot_width / 2.0,
        axis_y + 36.0
    );
    let dims: std::collections::BTreeSet<usize> = bars.iter().map(|p| p.dimension).collect();
    for (i, d) in dims.iter().enumerate() {
        let lx = WIDTH - RIGHT - 60.0 * (dims.len() - i) as f64;
        let _ = writeln!(
            svg,
            "<rect x=\"{lx}\" y=\"10\" width=\"12\" height=\"12\" fill=\"{}\"/><text x=\"{}\" y=\"20\">H{d}</text>",
            dimension_color(*d),
            lx + 16.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn tick_step(axis_max: f64) -> f64 {
    let raw = axis_max / 8.0;
    let magnitude = 10f64.powf(raw.log10().floor());
    [1.0, 2.0, 2.5, 5.0, 10.0]
        .iter()
        .map(|m| m * magnitude)
        .find(|&s| s >= raw)
        .unwrap_or(raw)
}

fn trim_tick(t: f64) -> String {
    let s = format!("{t:.3}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
