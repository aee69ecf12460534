//! Construction of `S₂`, the graph `Γ₃ = (I, E)` and the weight table `ω₃`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{index_sets, sign_half, Color, Dim, Node, VariantConfig, Weight, WeightTriple};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("target {target} is not in J for d = {d}")]
    TargetNotInJ { target: Node, d: u32 },
    #[error("edge endpoint {node} is not a vertex of the graph")]
    EndpointOutsideVertices { node: Node },
}

/// Unordered node pair, stored with the smaller node first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(Node, Node)", into = "(Node, Node)")]
pub struct Edge {
    a: Node,
    b: Node,
}

impl Edge {
    pub fn new(x: Node, y: Node) -> Self {
        if x <= y {
            Edge { a: x, b: y }
        } else {
            Edge { a: y, b: x }
        }
    }

    /// Lexicographically smaller endpoint.
    pub fn lo(self) -> Node {
        self.a
    }

    pub fn hi(self) -> Node {
        self.b
    }

    pub fn endpoints(self) -> [Node; 2] {
        [self.a, self.b]
    }

    pub fn other(self, n: Node) -> Option<Node> {
        if n == self.a {
            Some(self.b)
        } else if n == self.b {
            Some(self.a)
        } else {
            None
        }
    }
}

impl From<(Node, Node)> for Edge {
    fn from((x, y): (Node, Node)) -> Self {
        Edge::new(x, y)
    }
}

impl From<Edge> for (Node, Node) {
    fn from(e: Edge) -> Self {
        (e.a, e.b)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.a, self.b)
    }
}

/// One element `({(i,j),(j,l)}, (i,l))` of `S₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct S2Entry {
    pub target: Node,
    pub mid: u32,
    pub endpoints: Edge,
}

impl S2Entry {
    /// Entry for target `(i, l)` through midpoint `j`; `target.j` plays `l`.
    pub fn new(target: Node, mid: u32) -> Self {
        let endpoints = Edge::new(Node::new(target.i, mid), Node::new(mid, target.j));
        S2Entry {
            target,
            mid,
            endpoints,
        }
    }
}

impl fmt::Display for S2Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({{{}, {}}}, {})",
            Node::new(self.target.i, self.mid),
            Node::new(self.mid, self.target.j),
            self.target
        )
    }
}

/// `S₂` as a target-ordered entry list, plus the targets left without an entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct S2 {
    pub entries: Vec<S2Entry>,
    pub uncovered: Vec<Node>,
}

/// Midpoint `j` serving `target = (i, l)`, or `None` when an implied endpoint
/// falls outside the vertex set.
pub fn mid_for_target(
    target: Node,
    d: Dim,
    variant: VariantConfig,
) -> Result<Option<u32>, ConstructError> {
    let dv = d.get();
    if !d.contains(target) || target == Node::new(dv, dv) {
        return Err(ConstructError::TargetNotInJ { target, d: dv });
    }
    let (i, l) = (target.i, target.j);
    let floor_case = dv >= 2 && i.min(l) == dv - 1 && i.max(l) == dv;
    let mid = if variant.uses_floor_exception() && floor_case {
        (i + l) / 2
    } else {
        (i + l).div_ceil(2) + u32::from(i == l)
    };
    let excluded = variant.excluded_vertex(d);
    let ends = [Node::new(i, mid), Node::new(mid, l)];
    let valid = ends.iter().all(|&n| d.contains(n) && n != excluded);
    Ok(valid.then_some(mid))
}

pub fn build_s2(d: Dim, variant: VariantConfig) -> S2 {
    let sets = index_sets(d, variant);
    let mut entries = Vec::with_capacity(sets.targets.len());
    let mut uncovered = Vec::new();
    for &target in &sets.targets {
        match mid_for_target(target, d, variant).expect("target drawn from J") {
            Some(mid) => entries.push(S2Entry::new(target, mid)),
            None => uncovered.push(target),
        }
    }
    S2 { entries, uncovered }
}

/// An edge of `Γ₃` with every target whose `S₂` entry uses it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub endpoints: Edge,
    pub targets: Vec<Node>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gamma3 {
    pub vertices: BTreeSet<Node>,
    /// Sorted by endpoints, one record per unordered pair.
    pub edges: Vec<GraphEdge>,
}

impl Gamma3 {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Whole-graph degree of each vertex that has at least one edge.
    pub fn degrees(&self) -> BTreeMap<Node, usize> {
        let mut deg = BTreeMap::new();
        for e in &self.edges {
            for n in e.endpoints.endpoints() {
                *deg.entry(n).or_default() += 1;
            }
        }
        deg
    }

    /// Target incidences flattened back into `S₂` entries, ordered by target.
    pub fn incidences(&self) -> Vec<(Node, Edge)> {
        let mut out: Vec<(Node, Edge)> = self
            .edges
            .iter()
            .flat_map(|e| e.targets.iter().map(move |&t| (t, e.endpoints)))
            .collect();
        out.sort();
        out
    }
}

pub fn build_gamma3(
    entries: &[S2Entry],
    vertices: &BTreeSet<Node>,
) -> Result<Gamma3, ConstructError> {
    let mut pairs: Vec<(Edge, Node)> = Vec::with_capacity(entries.len());
    for entry in entries {
        for node in entry.endpoints.endpoints() {
            if !vertices.contains(&node) {
                return Err(ConstructError::EndpointOutsideVertices { node });
            }
        }
        pairs.push((entry.endpoints, entry.target));
    }
    pairs.sort_unstable();
    let mut edges: Vec<GraphEdge> = Vec::with_capacity(pairs.len());
    for (endpoints, target) in pairs {
        match edges.last_mut() {
            Some(last) if last.endpoints == endpoints => last.targets.push(target),
            _ => edges.push(GraphEdge {
                endpoints,
                targets: vec![target],
            }),
        }
    }
    Ok(Gamma3 {
        vertices: vertices.clone(),
        edges,
    })
}

/// `S₂` and `Γ₃` for one `(d, variant)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub d: Dim,
    pub variant: VariantConfig,
    pub s2: S2,
    pub graph: Gamma3,
}

impl Construction {
    pub fn new(d: Dim, variant: VariantConfig) -> Self {
        let s2 = build_s2(d, variant);
        let vertices = index_sets(d, variant).vertices;
        let graph = build_gamma3(&s2.entries, &vertices).expect("entries are filtered against I");
        Construction {
            d,
            variant,
            s2,
            graph,
        }
    }
}

/// Unmodified `ω₃(node)`: `5^{|i-j|+1}` at `m ≡ i-j`, `3·5^{|i-j|}` at
/// `m ≡ i-j - s` and `0` at `m ≡ i-j + s`, where `s = sign(i-j+1/2)`.
pub fn base_weight(node: Node) -> WeightTriple {
    let x = node.diff();
    let s = sign_half(x);
    let k = x.unsigned_abs() as u32;
    let mut w = WeightTriple::default();
    w[Color::from_residue(x)] = Weight::scaled_power_of_five(1, k + 1);
    w[Color::from_residue(x - s)] = Weight::scaled_power_of_five(3, k);
    w[Color::from_residue(x + s)] = Weight::zero();
    w
}

/// Replacement triples at `(d-1,d-1)`, `(d-1,d)`, `(d,d-1)` for the corrected
/// variant, in that order.
pub fn weight_overrides(d: Dim) -> Vec<(Node, WeightTriple)> {
    let dv = d.get();
    if dv < 2 {
        return Vec::new();
    }
    vec![
        (Node::new(dv - 1, dv - 1), WeightTriple::from_rgb(15, 15, 0)),
        (Node::new(dv - 1, dv), WeightTriple::from_rgb(25, 20, 0)),
        (Node::new(dv, dv - 1), WeightTriple::from_rgb(3, 0, 25)),
    ]
}

/// `ω₃` restricted to the vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightTable(pub BTreeMap<Node, WeightTriple>);

impl WeightTable {
    pub fn get(&self, n: Node) -> Option<&WeightTriple> {
        self.0.get(&n)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Node, &WeightTriple)> {
        self.0.iter()
    }

    /// Every value multiplied by `factor`.
    pub fn scaled(&self, factor: u64) -> WeightTable {
        let f = BigUint::from(factor);
        WeightTable(self.0.iter().map(|(&n, w)| (n, w.scaled(&f))).collect())
    }

    /// Nodes whose triple differs from [`base_weight`].
    pub fn deviations_from_base(&self) -> Vec<Node> {
        self.0
            .iter()
            .filter(|(&n, w)| base_weight(n) != **w)
            .map(|(&n, _)| n)
            .collect()
    }
}

pub fn weights(d: Dim, variant: VariantConfig) -> WeightTable {
    let vertices = index_sets(d, variant).vertices;
    let mut table: BTreeMap<Node, WeightTriple> =
        vertices.iter().map(|&n| (n, base_weight(n))).collect();
    if variant.has_weight_overrides() {
        for (n, w) in weight_overrides(d) {
            if let Some(slot) = table.get_mut(&n) {
                *slot = w;
            }
        }
    }
    WeightTable(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(d: u32) -> Dim {
        Dim::new(d).unwrap()
    }

    fn n(i: u32, j: u32) -> Node {
        Node::new(i, j)
    }

    #[test]
    fn mid_examples() {
        let d6 = dim(6);
        assert_eq!(
            mid_for_target(n(6, 5), d6, VariantConfig::CORRECTED),
            Ok(Some(5))
        );
        assert_eq!(
            mid_for_target(n(6, 5), d6, VariantConfig::ORIGINAL),
            Ok(None)
        );
        for v in VariantConfig::ALL {
            assert_eq!(mid_for_target(n(4, 4), d6, v), Ok(Some(5)));
            assert_eq!(mid_for_target(n(1, 3), d6, v), Ok(Some(2)));
        }
    }

    #[test]
    fn mid_rejects_targets_outside_j() {
        let d6 = dim(6);
        assert!(mid_for_target(n(6, 6), d6, VariantConfig::CORRECTED).is_err());
        assert!(mid_for_target(n(7, 1), d6, VariantConfig::CORRECTED).is_err());
        assert!(mid_for_target(n(0, 1), d6, VariantConfig::CORRECTED).is_err());
    }

    #[test]
    fn keep_floor_alternative_loses_coverage_at_d2() {
        let s2 = build_s2(dim(2), VariantConfig::ALTERNATIVE_KEEP_FLOOR);
        assert_eq!(s2.uncovered, vec![n(1, 2), n(2, 1)]);
        let s2 = build_s2(dim(3), VariantConfig::ALTERNATIVE_KEEP_FLOOR);
        assert!(s2.uncovered.is_empty());
    }

    #[test]
    fn s2_d3_corrected() {
        let s2 = build_s2(dim(3), VariantConfig::CORRECTED);
        let got: Vec<(Node, u32)> = s2.entries.iter().map(|e| (e.target, e.mid)).collect();
        let want = vec![
            (n(1, 1), 2),
            (n(1, 2), 2),
            (n(1, 3), 2),
            (n(2, 1), 2),
            (n(2, 2), 3),
            (n(2, 3), 2),
            (n(3, 1), 2),
            (n(3, 2), 2),
        ];
        assert_eq!(got, want);
        assert!(s2.uncovered.is_empty());
    }

    #[test]
    fn s2_d3_original_uncovered() {
        let s2 = build_s2(dim(3), VariantConfig::ORIGINAL);
        assert_eq!(s2.uncovered, vec![n(2, 3), n(3, 2)]);
    }

    #[test]
    fn s2_d1_empty() {
        for v in VariantConfig::ALL {
            let s2 = build_s2(dim(1), v);
            assert!(s2.entries.is_empty() && s2.uncovered.is_empty());
        }
    }

    #[test]
    fn s2_d6_restored_entries() {
        let s2 = build_s2(dim(6), VariantConfig::CORRECTED);
        let e65 = s2.entries.iter().find(|e| e.target == n(6, 5)).unwrap();
        assert_eq!(e65.endpoints, Edge::new(n(6, 5), n(5, 5)));
        let e56 = s2.entries.iter().find(|e| e.target == n(5, 6)).unwrap();
        assert_eq!(e56.endpoints, Edge::new(n(5, 5), n(5, 6)));
    }

    #[test]
    fn gamma3_d3_degree_at_centre() {
        let c = Construction::new(dim(3), VariantConfig::CORRECTED);
        assert_eq!(c.graph.edge_count(), 8);
        let nbrs: Vec<Node> = c
            .graph
            .edges
            .iter()
            .filter_map(|e| e.endpoints.other(n(2, 2)))
            .collect();
        assert_eq!(nbrs, vec![n(1, 2), n(2, 1), n(2, 3), n(3, 2)]);
    }

    #[test]
    fn gamma3_d6_counts() {
        let c = Construction::new(dim(6), VariantConfig::CORRECTED);
        assert_eq!(c.graph.vertex_count(), 35);
        assert_eq!(c.graph.edge_count(), 35);
        assert!(c.graph.edges.iter().all(|e| e.targets.len() == 1));
    }

    #[test]
    fn gamma3_empty() {
        let g = build_gamma3(&[], &BTreeSet::new()).unwrap();
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn gamma3_rejects_endpoint_outside_vertices() {
        let verts: BTreeSet<Node> = [n(1, 2)].into_iter().collect();
        let err = build_gamma3(&[S2Entry::new(n(1, 1), 2)], &verts).unwrap_err();
        assert_eq!(
            err,
            ConstructError::EndpointOutsideVertices { node: n(2, 1) }
        );
    }

    #[test]
    fn gamma3_merges_shared_edges() {
        let verts: BTreeSet<Node> = [n(1, 2), n(2, 1)].into_iter().collect();
        let a = S2Entry::new(n(1, 1), 2);
        let b = S2Entry {
            target: n(2, 2),
            mid: 0,
            endpoints: a.endpoints,
        };
        let g = build_gamma3(&[a, b], &verts).unwrap();
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.edges[0].targets, vec![n(1, 1), n(2, 2)]);
    }

    #[test]
    fn base_weight_examples() {
        assert_eq!(base_weight(n(3, 1)), WeightTriple::from_rgb(0, 125, 75));
        assert_eq!(base_weight(n(1, 2)), WeightTriple::from_rgb(15, 25, 0));
        for i in 1..10 {
            assert_eq!(base_weight(n(i, i)), WeightTriple::from_rgb(5, 3, 0));
        }
    }

    #[test]
    fn corrected_overrides_at_d6() {
        let w = weights(dim(6), VariantConfig::CORRECTED);
        assert_eq!(w.get(n(5, 6)), Some(&WeightTriple::from_rgb(25, 20, 0)));
        assert_eq!(w.get(n(5, 5)), Some(&WeightTriple::from_rgb(15, 15, 0)));
        assert_eq!(w.get(n(6, 5)), Some(&WeightTriple::from_rgb(3, 0, 25)));
        assert_eq!(w.get(n(3, 1)), Some(&WeightTriple::from_rgb(0, 125, 75)));
        assert_eq!(w.deviations_from_base(), vec![n(5, 5), n(5, 6), n(6, 5)]);
    }

    #[test]
    fn alternative_has_no_overrides() {
        let w = weights(dim(6), VariantConfig::ALTERNATIVE);
        assert_eq!(w.get(n(6, 5)), Some(&WeightTriple::from_rgb(15, 0, 25)));
        assert!(w.deviations_from_base().is_empty());
        assert_eq!(w.len(), 35);
    }

    #[test]
    fn weights_tiny_dims() {
        assert!(weights(dim(1), VariantConfig::CORRECTED).is_empty());
        // d = 2 corrected: I = {(1,1),(1,2),(2,1)}, all three overridden.
        let w = weights(dim(2), VariantConfig::CORRECTED);
        assert_eq!(w.deviations_from_base(), vec![n(1, 1), n(1, 2), n(2, 1)]);
    }
}
