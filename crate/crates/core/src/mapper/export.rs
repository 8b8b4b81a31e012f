//! JSON, Graphviz and static HTML renderings of a MAPPER graph.

use std::fmt::Write as _;

use super::graph::MapperGraph;
use super::pca::ProjectedData;

/// Viridis stops from dark purple to yellow.
const VIRIDIS: [(u8, u8, u8); 9] = [
    (0x44, 0x01, 0x54),
    (0x47, 0x2c, 0x7a),
    (0x3b, 0x51, 0x8b),
    (0x2c, 0x71, 0x8e),
    (0x21, 0x90, 0x8d),
    (0x27, 0xad, 0x81),
    (0x5c, 0xc8, 0x63),
    (0xaa, 0xdc, 0x32),
    (0xfd, 0xe7, 0x25),
];

/// Yellow at `t = 0`, dark purple at `t = 1`.
pub fn ramp_color(t: f64) -> String {
    let t = if t.is_finite() { t.clamp(0.0, 1.0) } else { 0.0 };
    let pos = (1.0 - t) * (VIRIDIS.len() - 1) as f64;
    let i = (pos.floor() as usize).min(VIRIDIS.len() - 2);
    let f = pos - i as f64;
    let mix = |a: u8, b: u8| (a as f64 + (b as f64 - a as f64) * f).round() as u8;
    let (a, b) = (VIRIDIS[i], VIRIDIS[i + 1]);
    format!("#{:02x}{:02x}{:02x}", mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

impl MapperGraph {
    /// Node color values rescaled to `[0, 1]` over the graph.
    fn color_positions(&self) -> Vec<f64> {
        let (lo, hi) = self.nodes.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), n| {
            (lo.min(n.color_value), hi.max(n.color_value))
        });
        self.nodes
            .iter()
            .map(|n| if hi > lo { (n.color_value - lo) / (hi - lo) } else { 0.0 })
            .collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("graph serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph mapper {\n  node [shape=circle, style=filled, fontsize=10];\n");
        for (node, t) in self.nodes.iter().zip(self.color_positions()) {
            let _ = writeln!(
                out,
                "  {} [label=\"{}\", fillcolor=\"{}\", tooltip=\"{} rows, mean row {:.1}\"];",
                node.id,
                node.id,
                ramp_color(t),
                node.members.len(),
                node.color_value
            );
        }
        for e in &self.edges {
            let _ = writeln!(out, "  {} -- {} [weight={}, penwidth={:.2}];", e.source, e.target, e.shared, 1.0 + (e.shared as f64).ln());
        }
        out.push_str("}\n");
        out
    }

    /// Self-contained page with the graph JSON and a static SVG drawing.
    ///
    /// Nodes sit at the mean lens position of their members; a 1-D lens
    /// spreads clusters of the same interval vertically.
    pub fn to_html(&self, projected: &ProjectedData, title: &str) -> String {
        const W: f64 = 900.0;
        const H: f64 = 600.0;
        const PAD: f64 = 40.0;
        let positions: Vec<(f64, f64)> = self
            .nodes
            .iter()
            .map(|n| {
                let mean = |axis: usize| {
                    n.members.iter().map(|&r| projected.row(r)[axis]).sum::<f64>() / n.members.len() as f64
                };
                let y = if projected.n_components() > 1 { mean(1) } else { n.cluster_label as f64 };
                (mean(0), y)
            })
            .collect();
        let bounds = |f: fn(&(f64, f64)) -> f64| {
            positions.iter().map(f).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
        };
        let (x0, x1) = bounds(|p| p.0);
        let (y0, y1) = bounds(|p| p.1);
        let scale = |v: f64, lo: f64, hi: f64, span: f64| {
            if hi > lo { PAD + (v - lo) / (hi - lo) * (span - 2.0 * PAD) } else { span / 2.0 }
        };
        let screen: Vec<(f64, f64)> =
            positions.iter().map(|&(x, y)| (scale(x, x0, x1, W), H - scale(y, y0, y1, H))).collect();
        let max_size = self.nodes.iter().map(|n| n.members.len()).max().unwrap_or(1) as f64;

        let mut svg = format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n");
        for e in &self.edges {
            let (a, b) = (screen[e.source], screen[e.target]);
            let _ = writeln!(svg, "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#999\" stroke-width=\"1.5\"/>", a.0, a.1, b.0, b.1);
        }
        for ((node, &(x, y)), t) in self.nodes.iter().zip(&screen).zip(self.color_positions()) {
            let r = 4.0 + 10.0 * (node.members.len() as f64 / max_size).sqrt();
            let _ = writeln!(
                svg,
                "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{r:.2}\" fill=\"{}\" stroke=\"#333\"><title>node {} ({} rows)</title></circle>",
                ramp_color(t),
                node.id,
                node.members.len()
            );
        }
        svg.push_str("</svg>\n");

        let data = serde_json::to_string(self).expect("graph serializes").replace("</", "<\\/");
        let title = escape_html(title);
        format!(
            "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>{title}</title>\n</head>\n<body>\n<h1>{title}</h1>\n<p>{} nodes, {} edges. Yellow nodes hold low row indices, dark purple nodes high ones.</p>\n{svg}<script type=\"application/json\" id=\"mapper-data\">{data}</script>\n</body>\n</html>\n",
            self.nodes.len(),
            self.edges.len()
        )
    }
}

fn escape_html(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
