use std::fmt::Write;

use super::{labels, position, stroke_colors, Figure};
use crate::model::Node;

const UNIT: i64 = 90;
const MARGIN: i64 = 40;

fn xy(n: Node) -> (i64, i64) {
    let (x, y) = position(n);
    (x * UNIT + MARGIN, -y * UNIT + MARGIN)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub(super) fn emit(fig: &Figure) -> String {
    let side = (i64::from(fig.d.get()) + 1) * UNIT + MARGIN;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{side}\" height=\"{side}\" viewBox=\"0 0 {side} {side}\">"
    );
    let _ = writeln!(out, "  <title>{}</title>", escape(&fig.title()));
    out.push_str("  <g stroke-width=\"2\">\n");
    for (e, cs) in &fig.edges {
        let colors = stroke_colors(*cs);
        let (x1, y1) = xy(e.lo());
        let (x2, y2) = xy(e.hi());
        let _ = writeln!(
            out,
            "    <g class=\"edge\" data-edge=\"{},{} {},{}\" data-colors=\"{}\">",
            e.lo().i,
            e.lo().j,
            e.hi().i,
            e.hi().j,
            colors.join(" ")
        );
        // parallel strokes, 3px apart, for multi-colored edges
        let k = colors.len() as i64;
        for (idx, c) in colors.iter().enumerate() {
            let off = 3 * (2 * idx as i64 - (k - 1));
            let _ = writeln!(
                out,
                "      <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{c}\"/>",
                x1 + off,
                y1 + off,
                x2 + off,
                y2 + off
            );
        }
        out.push_str("    </g>\n");
    }
    out.push_str("  </g>\n");
    out.push_str("  <g font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">\n");
    for (n, w) in &fig.nodes {
        let (x, y) = xy(*n);
        let _ = writeln!(out, "    <g class=\"node\" data-node=\"{},{}\">", n.i, n.j);
        let _ = writeln!(
            out,
            "      <circle cx=\"{x}\" cy=\"{y}\" r=\"4\" fill=\"black\"/>"
        );
        let spans: Vec<String> = labels(w)
            .iter()
            .map(|(c, v)| format!("<tspan fill=\"{c}\">{v}</tspan>"))
            .collect();
        let _ = writeln!(
            out,
            "      <text x=\"{x}\" y=\"{}\">{}</text>",
            y - 10,
            spans.join(" ")
        );
        out.push_str("    </g>\n");
    }
    out.push_str("  </g>\n");
    out.push_str("</svg>\n");
    out
}
