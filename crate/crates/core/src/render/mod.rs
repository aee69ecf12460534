//! Text renderings of `Γ₃` with its weight labels: DOT, TikZ and SVG.
//!
//! Node `(i, j)` sits at grid position `x = j`, `y = -i`. Each node is
//! labelled with its three weights in the order red (`m = 0`), green
//! (`m = 2`), blue (`m = 1`); zeros are printed. Edge strokes take the colors
//! assigned by the coloring rule.

mod dot;
mod svg;
mod tikz;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{ColoringError, ColoringRule};
use crate::construct::{weights, Construction, Edge, WeightTable};
use crate::model::{Color, ColorSet, Dim, Node, VariantConfig, Weight, WeightTriple};
use crate::verify::edge_colors;

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("unsupported format `{0}` (expected dot, tikz or svg)")]
    UnsupportedFormat(String),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Dot,
    Tikz,
    Svg,
}

impl Format {
    pub const ALL: [Format; 3] = [Format::Dot, Format::Tikz, Format::Svg];

    pub fn name(self) -> &'static str {
        match self {
            Format::Dot => "dot",
            Format::Tikz => "tikz",
            Format::Svg => "svg",
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            Format::Dot => "dot",
            Format::Tikz => "tex",
            Format::Svg => "svg",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Format {
    type Err = RenderError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Format::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| RenderError::UnsupportedFormat(s.to_string()))
    }
}

/// Grid position of a node, in abstract units.
pub fn position(n: Node) -> (i64, i64) {
    (i64::from(n.j), -i64::from(n.i))
}

/// Everything a renderer needs, already colored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Figure {
    pub d: Dim,
    pub variant: VariantConfig,
    pub rule: String,
    pub nodes: Vec<(Node, WeightTriple)>,
    pub edges: Vec<(Edge, ColorSet)>,
}

impl Figure {
    pub fn build(
        d: Dim,
        variant: VariantConfig,
        rule: &ColoringRule,
    ) -> Result<Self, ColoringError> {
        let c = Construction::new(d, variant);
        let w = weights(d, variant);
        Self::from_parts(d, variant, rule, &c.graph, &w)
    }

    pub fn from_parts(
        d: Dim,
        variant: VariantConfig,
        rule: &ColoringRule,
        graph: &crate::construct::Gamma3,
        w: &WeightTable,
    ) -> Result<Self, ColoringError> {
        let colors = edge_colors(graph, rule, w)?;
        let nodes = graph
            .vertices
            .iter()
            .map(|&n| (n, w.get(n).cloned().unwrap_or_default()))
            .collect();
        let edges = graph
            .edges
            .iter()
            .zip(colors)
            .map(|(e, c)| (e.endpoints, c))
            .collect();
        Ok(Figure {
            d,
            variant,
            rule: rule.name().to_string(),
            nodes,
            edges,
        })
    }

    pub fn title(&self) -> String {
        format!(
            "Gamma3 d={} variant={} rule={}",
            self.d, self.variant, self.rule
        )
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Dot => dot::emit(self),
            Format::Tikz => tikz::emit(self),
            Format::Svg => svg::emit(self),
        }
    }
}

pub fn emit_figure(
    d: Dim,
    variant: VariantConfig,
    rule: &ColoringRule,
    format: Format,
) -> Result<String, RenderError> {
    Ok(Figure::build(d, variant, rule)?.emit(format))
}

/// Color names of a stroke; uncolored edges fall back to gray.
fn stroke_colors(cs: ColorSet) -> Vec<&'static str> {
    if cs.is_empty() {
        vec!["gray"]
    } else {
        cs.iter().map(Color::name).collect()
    }
}

/// `(color name, value)` pairs in label order.
fn labels(w: &WeightTriple) -> [(&'static str, &Weight); 3] {
    Color::LABEL_ORDER.map(|c| (c.name(), &w[c]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalLabel {
    pub node: Node,
    pub green: String,
    pub blue: String,
}

/// Green and blue labels of every diagonal vertex, as rendered.
pub fn diagonal_label_audit(d: Dim, variant: VariantConfig) -> Vec<DiagonalLabel> {
    weights(d, variant)
        .iter()
        .filter(|(n, _)| n.is_diagonal())
        .map(|(&node, w)| DiagonalLabel {
            node,
            green: w[Color::GREEN].to_string(),
            blue: w[Color::BLUE].to_string(),
        })
        .collect()
}
