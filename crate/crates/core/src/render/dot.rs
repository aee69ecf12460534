use std::fmt::Write;

use super::{labels, position, stroke_colors, Figure};
use crate::model::Node;

fn id(n: Node) -> String {
    format!("\"{},{}\"", n.i, n.j)
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub(super) fn emit(fig: &Figure) -> String {
    let mut out = String::new();
    out.push_str("graph gamma3 {\n");
    let _ = writeln!(
        out,
        "  graph [label=\"{}\", layout=neato, splines=false];",
        escape(&fig.title())
    );
    out.push_str("  node [shape=plaintext, fontsize=10];\n");
    out.push_str("  edge [penwidth=2];\n");
    for (n, w) in &fig.nodes {
        let (x, y) = position(*n);
        let label: Vec<String> = labels(w)
            .iter()
            .map(|(c, v)| format!("<FONT COLOR=\"{c}\">{v}</FONT>"))
            .collect();
        let _ = writeln!(
            out,
            "  {} [pos=\"{x},{y}!\", label=<{}>];",
            id(*n),
            label.join(" ")
        );
    }
    for (e, cs) in &fig.edges {
        let colors = stroke_colors(*cs).join(":");
        let _ = writeln!(
            out,
            "  {} -- {} [color=\"{colors}\"];",
            id(e.lo()),
            id(e.hi())
        );
    }
    out.push_str("}\n");
    out
}
