//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

pub mod dot_grammar;

use std::collections::{BTreeMap, BTreeSet};

use gamma3::model::{Color, Dim, MidRule, Node, VariantConfig, VariantKind};
use gamma3::Edge;

/// Depth-first acyclicity check over an undirected multigraph. Counts edge
/// ids rather than endpoints so parallel edges and loops are cycles.
pub fn dfs_is_forest(edges: &[Edge]) -> bool {
    let mut adj: BTreeMap<Node, Vec<(Node, usize)>> = BTreeMap::new();
    for (k, e) in edges.iter().enumerate() {
        adj.entry(e.lo()).or_default().push((e.hi(), k));
        adj.entry(e.hi()).or_default().push((e.lo(), k));
    }
    let mut seen: BTreeSet<Node> = BTreeSet::new();
    for &root in adj.keys() {
        if seen.contains(&root) {
            continue;
        }
        seen.insert(root);
        // (node, edge id used to reach it)
        let mut stack = vec![(root, usize::MAX)];
        while let Some((u, via)) = stack.pop() {
            for &(v, k) in &adj[&u] {
                if k == via {
                    continue;
                }
                if !seen.insert(v) {
                    return false;
                }
                stack.push((v, k));
            }
        }
    }
    true
}

fn vertex_set(d: u32, kind: VariantKind) -> BTreeSet<(u32, u32)> {
    let skip = match kind {
        VariantKind::AlternativeS2 => (1, 1),
        _ => (d, d),
    };
    (1..=d)
        .flat_map(|i| (1..=d).map(move |j| (i, j)))
        .filter(|&p| p != skip)
        .collect()
}

/// `S₂` by exhaustive search over all vertex pairs `{(i,j),(j,l)}` and
/// targets `(i,l)`, testing the defining membership condition directly.
/// Returns target -> midpoints found.
pub fn brute_force_s2(d: u32, variant: VariantConfig) -> BTreeMap<Node, Vec<u32>> {
    let verts = vertex_set(d, variant.kind);
    let floor_exception = match variant.kind {
        VariantKind::OriginalErroneous => false,
        VariantKind::CorrectedS1 => true,
        VariantKind::AlternativeS2 => variant.alt_mid_rule == MidRule::KeepFloorException,
    };
    let mut out: BTreeMap<Node, Vec<u32>> = BTreeMap::new();
    for &(i, j) in &verts {
        for &(j2, l) in &verts {
            if j2 != j || (i, j) == (j2, l) {
                continue;
            }
            if (i, l) == (d, d) {
                continue;
            }
            let half = f64::from(i + l) / 2.0;
            let pair: BTreeSet<u32> = [i, l].into_iter().collect();
            let corner: BTreeSet<u32> = [d.saturating_sub(1), d].into_iter().collect();
            let want = if floor_exception && d >= 2 && pair == corner {
                half.floor()
            } else {
                half.ceil() + if i == l { 1.0 } else { 0.0 }
            };
            if f64::from(j) == want {
                out.entry(Node::new(i, l)).or_default().push(j);
            }
        }
    }
    out
}

/// `ω₃` base formula evaluated by testing each residue against the three
/// congruence conditions. `u128` is exact for `|i - j| <= 53`.
pub fn base_weight_oracle(node: Node) -> [u128; 3] {
    let x = i64::from(node.i) - i64::from(node.j);
    let sign = if 2 * x + 1 > 0 { 1 } else { -1 };
    let k = x.unsigned_abs() as u32;
    let mut out = [u128::MAX; 3];
    for m in 0..3i64 {
        let congruent = |r: i64| (m - r).rem_euclid(3) == 0;
        out[m as usize] = if congruent(x) {
            5u128.pow(k + 1)
        } else if congruent(x - sign) {
            3 * 5u128.pow(k)
        } else if congruent(x + sign) {
            0
        } else {
            unreachable!("residues cover Z/3")
        };
    }
    out
}

pub fn triple_as_u128(w: &gamma3::WeightTriple) -> [u128; 3] {
    Color::ALL.map(|c| w[c].to_string().parse::<u128>().unwrap())
}

pub fn dim(d: u32) -> Dim {
    Dim::new(d).unwrap()
}

pub fn n(i: u32, j: u32) -> Node {
    Node::new(i, j)
}
