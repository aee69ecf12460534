//! Versioned JSON interchange for graphs, plus atomic file output.
//!
//! A graph document looks like
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "tool_version": "0.1.0",
//!   "d": 3,
//!   "variant": "corrected-s1",
//!   "rule": { "kind": "target-diff" },
//!   "vertices": [[1, 1], [1, 2], ...],
//!   "edges": [{ "endpoints": [[1, 2], [2, 1]], "targets": [[1, 1]] }, ...],
//!   "uncovered": [],
//!   "weights": [{ "node": [1, 1], "red": "5", "green": "3", "blue": "0" }, ...]
//! }
//! ```
//!
//! Weight values are decimal strings so they stay exact at any size.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::ColoringRule;
use crate::construct::{weights, Construction, Edge, Gamma3, GraphEdge, WeightTable};
use crate::model::{Color, Dim, Node, VariantConfig, Weight, WeightTriple};
use crate::{SCHEMA_VERSION, TOOL_VERSION};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported version {0} (this build reads schema_version {SCHEMA_VERSION})")]
    UnsupportedVersion(u64),
    #[error("invalid document at {location}: {message}")]
    Invalid { location: String, message: String },
}

impl From<serde_json::Error> for DocumentError {
    fn from(e: serde_json::Error) -> Self {
        DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

fn invalid(location: impl Into<String>, message: impl Into<String>) -> DocumentError {
    DocumentError::Invalid {
        location: location.into(),
        message: message.into(),
    }
}

/// A graph with its weights and the settings that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphBundle {
    pub d: Dim,
    pub variant: VariantConfig,
    pub rule: ColoringRule,
    pub graph: Gamma3,
    pub weights: WeightTable,
    pub uncovered: Vec<Node>,
}

impl GraphBundle {
    pub fn build(d: Dim, variant: VariantConfig, rule: ColoringRule) -> Self {
        let c = Construction::new(d, variant);
        GraphBundle {
            d,
            variant,
            rule,
            graph: c.graph,
            weights: weights(d, variant),
            uncovered: c.s2.uncovered,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDocument {
    schema_version: u64,
    tool_version: String,
    d: u32,
    variant: VariantConfig,
    rule: ColoringRule,
    vertices: Vec<Node>,
    edges: Vec<GraphEdge>,
    uncovered: Vec<Node>,
    weights: Vec<WeightRow>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightRow {
    node: Node,
    red: String,
    green: String,
    blue: String,
}

pub fn write_graph(bundle: &GraphBundle) -> String {
    let doc = GraphDocument {
        schema_version: u64::from(SCHEMA_VERSION),
        tool_version: TOOL_VERSION.to_string(),
        d: bundle.d.get(),
        variant: bundle.variant,
        rule: bundle.rule.clone(),
        vertices: bundle.graph.vertices.iter().copied().collect(),
        edges: bundle.graph.edges.clone(),
        uncovered: bundle.uncovered.clone(),
        weights: bundle
            .weights
            .iter()
            .map(|(&node, w)| WeightRow {
                node,
                red: w[Color::RED].to_string(),
                green: w[Color::GREEN].to_string(),
                blue: w[Color::BLUE].to_string(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("document serializes");
    s.push('\n');
    s
}

pub fn read_graph(text: &str) -> Result<GraphBundle, DocumentError> {
    let raw: serde_json::Value = serde_json::from_str(text)?;
    match raw
        .get("schema_version")
        .and_then(serde_json::Value::as_u64)
    {
        Some(v) if v == u64::from(SCHEMA_VERSION) => {}
        Some(v) => return Err(DocumentError::UnsupportedVersion(v)),
        None => {
            return Err(invalid(
                "schema_version",
                "missing or not an unsigned integer",
            ))
        }
    }
    let doc: GraphDocument = serde_json::from_str(text)?;
    let d = Dim::new(doc.d).map_err(|e| invalid("d", e.to_string()))?;
    let in_range = |loc: String, n: Node| {
        if d.contains(n) {
            Ok(n)
        } else {
            Err(invalid(loc, format!("node {n} outside 1..={d}")))
        }
    };

    let mut vertices = BTreeSet::new();
    for (k, &v) in doc.vertices.iter().enumerate() {
        in_range(format!("vertices[{k}]"), v)?;
        if !vertices.insert(v) {
            return Err(invalid(
                format!("vertices[{k}]"),
                format!("duplicate vertex {v}"),
            ));
        }
    }

    let corner = Node::new(d.get(), d.get());
    let mut seen: BTreeSet<Edge> = BTreeSet::new();
    for (k, e) in doc.edges.iter().enumerate() {
        for (side, n) in e.endpoints.endpoints().into_iter().enumerate() {
            let loc = format!("edges[{k}].endpoints[{side}]");
            in_range(loc.clone(), n)?;
            if !vertices.contains(&n) {
                return Err(invalid(loc, format!("endpoint {n} is not a listed vertex")));
            }
        }
        for (t, &target) in e.targets.iter().enumerate() {
            let loc = format!("edges[{k}].targets[{t}]");
            in_range(loc.clone(), target)?;
            if target == corner {
                return Err(invalid(loc, format!("target {target} is not in J")));
            }
        }
        if !seen.insert(e.endpoints) {
            return Err(invalid(
                format!("edges[{k}]"),
                format!("duplicate edge {}", e.endpoints),
            ));
        }
    }
    for (k, &u) in doc.uncovered.iter().enumerate() {
        in_range(format!("uncovered[{k}]"), u)?;
    }

    let mut table = BTreeMap::new();
    for (k, row) in doc.weights.iter().enumerate() {
        let loc = format!("weights[{k}]");
        in_range(loc.clone(), row.node)?;
        if !vertices.contains(&row.node) {
            return Err(invalid(loc, format!("weight for non-vertex {}", row.node)));
        }
        let parse = |field: &str, s: &str| {
            s.parse::<Weight>()
                .map_err(|e| invalid(format!("{loc}.{field}"), format!("`{s}`: {e}")))
        };
        let mut w = WeightTriple::default();
        w[Color::RED] = parse("red", &row.red)?;
        w[Color::GREEN] = parse("green", &row.green)?;
        w[Color::BLUE] = parse("blue", &row.blue)?;
        if table.insert(row.node, w).is_some() {
            return Err(invalid(
                loc,
                format!("duplicate weight row for {}", row.node),
            ));
        }
    }
    if let Some(missing) = vertices.iter().find(|v| !table.contains_key(v)) {
        return Err(invalid(
            "weights",
            format!("no weight row for vertex {missing}"),
        ));
    }

    Ok(GraphBundle {
        d,
        variant: doc.variant,
        rule: doc.rule,
        graph: Gamma3 {
            vertices,
            edges: doc.edges,
        },
        weights: WeightTable(table),
        uncovered: doc.uncovered,
    })
}

/// Serialize any report type as pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

/// Write `contents` to `path` via a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
