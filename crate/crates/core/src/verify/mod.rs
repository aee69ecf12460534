//! Coverage, variant diffs and monochromatic forest checks.

pub mod forest;
pub mod sweep;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::coloring::{color_of_edge, ColoringError, ColoringRule};
use crate::construct::{build_s2, weights, Construction, Edge, Gamma3, S2Entry, WeightTable};
use crate::model::{Color, ColorSet, Dim, Node, VariantConfig};

pub use forest::{is_forest, ForestCheck};
pub use sweep::{
    rule_exploration, sweep, Certificate, DRange, Execution, RuleExploration, SweepError,
};

/// Largest degree a monochromatic subgraph may have.
pub const MAX_COLOR_DEGREE: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeWitness {
    pub node: Node,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorSubgraphReport {
    pub color: Color,
    pub color_name: String,
    pub edge_count: usize,
    pub is_forest: bool,
    pub max_degree: usize,
    pub components: usize,
    pub cycle_witness: Option<Vec<Edge>>,
    /// First vertex, in canonical order, whose degree exceeds the bound.
    pub degree_witness: Option<DegreeWitness>,
}

impl ColorSubgraphReport {
    pub fn from_edges(color: Color, edges: &[Edge]) -> Self {
        let analysis = forest::analyze_edges(edges);
        let max_degree = analysis.degrees.iter().map(|&(_, k)| k).max().unwrap_or(0);
        let degree_witness = analysis
            .degrees
            .iter()
            .find(|&&(_, k)| k > MAX_COLOR_DEGREE)
            .map(|&(node, degree)| DegreeWitness { node, degree });
        ColorSubgraphReport {
            color,
            color_name: color.name().to_string(),
            edge_count: edges.len(),
            is_forest: analysis.check.is_forest,
            max_degree,
            components: analysis.components,
            cycle_witness: analysis.check.cycle,
            degree_witness,
        }
    }

    pub fn passes(&self) -> bool {
        self.is_forest && self.max_degree <= MAX_COLOR_DEGREE
    }
}

/// Concrete evidence that a check failed for one `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Uncovered {
        d: u32,
        targets: Vec<Node>,
    },
    Cycle {
        d: u32,
        color: Color,
        edges: Vec<Edge>,
    },
    Degree {
        d: u32,
        color: Color,
        node: Node,
        degree: usize,
    },
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::Uncovered { d, targets } => {
                write!(f, "d={d}: uncovered targets")?;
                for t in targets {
                    write!(f, " {t}")?;
                }
                Ok(())
            }
            Witness::Cycle { d, color, edges } => {
                write!(f, "d={d}: {color} cycle")?;
                for e in edges {
                    write!(f, " {e}")?;
                }
                Ok(())
            }
            Witness::Degree {
                d,
                color,
                node,
                degree,
            } => write!(f, "d={d}: {color} degree {degree} at {node}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub d: Dim,
    pub variant: VariantConfig,
    pub rule: String,
    pub coverage_uncovered: Vec<Node>,
    /// Indexed by residue `m = 0, 1, 2`.
    pub per_color: Vec<ColorSubgraphReport>,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub pass: bool,
}

impl VerificationReport {
    pub fn max_degree(&self) -> usize {
        self.per_color
            .iter()
            .map(|c| c.max_degree)
            .max()
            .unwrap_or(0)
    }

    /// Coverage failures first, then cycles, then degree violations.
    pub fn first_witness(&self) -> Option<Witness> {
        let d = self.d.get();
        if !self.coverage_uncovered.is_empty() {
            return Some(Witness::Uncovered {
                d,
                targets: self.coverage_uncovered.clone(),
            });
        }
        for c in &self.per_color {
            if let Some(edges) = &c.cycle_witness {
                return Some(Witness::Cycle {
                    d,
                    color: c.color,
                    edges: edges.clone(),
                });
            }
        }
        self.per_color.iter().find_map(|c| {
            c.degree_witness.map(|w| Witness::Degree {
                d,
                color: c.color,
                node: w.node,
                degree: w.degree,
            })
        })
    }
}

/// Colors of every edge, in the graph's edge order.
pub fn edge_colors(
    g: &Gamma3,
    rule: &ColoringRule,
    w: &WeightTable,
) -> Result<Vec<ColorSet>, ColoringError> {
    g.edges.iter().map(|e| color_of_edge(e, rule, w)).collect()
}

/// Edges carrying color `m`, in canonical order.
pub fn color_subgraph(
    g: &Gamma3,
    rule: &ColoringRule,
    w: &WeightTable,
    m: Color,
) -> Result<Vec<Edge>, ColoringError> {
    let mut out = Vec::new();
    for e in &g.edges {
        if color_of_edge(e, rule, w)?.contains(m) {
            out.push(e.endpoints);
        }
    }
    Ok(out)
}

/// Check an already-built graph and weight table.
pub fn verify_graph(
    d: Dim,
    variant: VariantConfig,
    rule: &ColoringRule,
    graph: &Gamma3,
    uncovered: &[Node],
    w: &WeightTable,
) -> Result<VerificationReport, ColoringError> {
    let colors = edge_colors(graph, rule, w)?;
    let per_color: Vec<ColorSubgraphReport> = Color::ALL
        .into_iter()
        .map(|m| {
            let edges: Vec<Edge> = graph
                .edges
                .iter()
                .zip(&colors)
                .filter(|(_, cs)| cs.contains(m))
                .map(|(e, _)| e.endpoints)
                .collect();
            ColorSubgraphReport::from_edges(m, &edges)
        })
        .collect();
    let pass = uncovered.is_empty() && per_color.iter().all(ColorSubgraphReport::passes);
    Ok(VerificationReport {
        d,
        variant,
        rule: rule.name().to_string(),
        coverage_uncovered: uncovered.to_vec(),
        per_color,
        vertex_count: graph.vertex_count(),
        edge_count: graph.edge_count(),
        pass,
    })
}

/// Build, color and check one `(d, variant)`.
pub fn verify_construction(
    d: Dim,
    variant: VariantConfig,
    rule: &ColoringRule,
) -> Result<VerificationReport, ColoringError> {
    let c = Construction::new(d, variant);
    let w = if rule.needs_weights() {
        weights(d, variant)
    } else {
        WeightTable::default()
    };
    verify_graph(d, variant, rule, &c.graph, &c.s2.uncovered, &w)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariantDiff {
    pub added: Vec<S2Entry>,
    pub removed: Vec<S2Entry>,
}

/// Entries of `S₂` present in `b` but not `a` (added) and vice versa.
pub fn diff_variants(d: Dim, a: VariantConfig, b: VariantConfig) -> VariantDiff {
    let from: BTreeSet<S2Entry> = build_s2(d, a).entries.into_iter().collect();
    let to: BTreeSet<S2Entry> = build_s2(d, b).entries.into_iter().collect();
    VariantDiff {
        added: to.difference(&from).copied().collect(),
        removed: from.difference(&to).copied().collect(),
    }
}
