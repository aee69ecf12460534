use std::fmt::Write;

use super::{labels, position, stroke_colors, Figure};
use crate::model::Node;

fn id(n: Node) -> String {
    format!("n-{}-{}", n.i, n.j)
}

pub(super) fn emit(fig: &Figure) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "% {}", fig.title().replace(['\n', '\r'], " "));
    out.push_str("\\begin{tikzpicture}[x=1.6cm, y=1.0cm, every node/.style={font=\\scriptsize}]\n");
    for (n, w) in &fig.nodes {
        let (x, y) = position(*n);
        let label: Vec<String> = labels(w)
            .iter()
            .map(|(c, v)| format!("\\textcolor{{{c}}}{{{v}}}"))
            .collect();
        let _ = writeln!(
            out,
            "  \\node ({}) at ({x},{y}) {{{}}};",
            id(*n),
            label.join("\\,")
        );
    }
    for (e, cs) in &fig.edges {
        let _ = writeln!(out, "  % edge {} -- {}", e.lo(), e.hi());
        for c in stroke_colors(*cs) {
            let _ = writeln!(out, "  \\draw[{c}] ({}) -- ({});", id(e.lo()), id(e.hi()));
        }
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}
