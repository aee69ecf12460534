//! Acyclicity checks over node-labelled edge lists.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::construct::Edge;
use crate::model::Node;

/// Disjoint sets over `0..len` with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(len: usize) -> Self {
        DisjointSets {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn push(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        self.size.push(1);
        id
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merge the sets of `x` and `y`; false if they were already joined.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (mut rx, mut ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        if self.size[rx] < self.size[ry] {
            std::mem::swap(&mut rx, &mut ry);
        }
        self.parent[ry] = rx;
        self.size[rx] += self.size[ry];
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestCheck {
    pub is_forest: bool,
    /// Closed walk of distinct edges, present iff `!is_forest`.
    pub cycle: Option<Vec<Edge>>,
}

/// Everything the verifier needs from one edge list, in a single pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeListAnalysis {
    pub check: ForestCheck,
    /// Connected components among touched vertices.
    pub components: usize,
    /// Degree of every touched vertex, in canonical node order.
    pub degrees: Vec<(Node, usize)>,
}

/// Dense ids for the endpoints of an edge list.
enum NodeIds {
    /// Row-major index `i * side + j`.
    Grid { side: usize },
    /// Sorted, deduplicated endpoints; id is the position.
    Sorted(Vec<Node>),
}

/// Grids up to this many cells are indexed directly.
const GRID_LIMIT: u64 = 1 << 22;

impl NodeIds {
    fn new(edges: &[Edge]) -> Self {
        let side = edges
            .iter()
            .flat_map(|e| e.endpoints())
            .map(|n| n.i.max(n.j))
            .max()
            .map_or(0, |m| u64::from(m) + 1);
        if side * side <= GRID_LIMIT {
            NodeIds::Grid {
                side: side as usize,
            }
        } else {
            let mut nodes: Vec<Node> = edges.iter().flat_map(|e| e.endpoints()).collect();
            nodes.sort_unstable();
            nodes.dedup();
            NodeIds::Sorted(nodes)
        }
    }

    fn len(&self) -> usize {
        match self {
            NodeIds::Grid { side } => side * side,
            NodeIds::Sorted(nodes) => nodes.len(),
        }
    }

    fn id(&self, n: Node) -> usize {
        match self {
            NodeIds::Grid { side } => n.i as usize * side + n.j as usize,
            NodeIds::Sorted(nodes) => nodes.binary_search(&n).expect("endpoint interned"),
        }
    }
}

/// Union-find pass over `edges`: acyclicity with a concrete cycle for the
/// first closing edge, component count and degrees.
pub fn analyze_edges(edges: &[Edge]) -> EdgeListAnalysis {
    let ids = NodeIds::new(edges);
    let mut sets = DisjointSets::new(ids.len());
    let mut degree = vec![0usize; ids.len()];
    let mut merges = 0usize;
    let mut closing: Option<usize> = None;
    for (k, e) in edges.iter().enumerate() {
        let (a, b) = (ids.id(e.lo()), ids.id(e.hi()));
        degree[a] += 1;
        degree[b] += 1;
        if sets.union(a, b) {
            merges += 1;
        } else if closing.is_none() {
            closing = Some(k);
        }
    }
    let mut degrees: Vec<(Node, usize)> = Vec::new();
    for e in edges {
        for n in e.endpoints() {
            degrees.push((n, degree[ids.id(n)]));
        }
    }
    degrees.sort_unstable();
    degrees.dedup();
    let components = degrees.len() - merges;
    let cycle = closing.map(|k| {
        let mut cycle = tree_path(&edges[..k], edges[k].lo(), edges[k].hi());
        cycle.push(edges[k]);
        cycle
    });
    EdgeListAnalysis {
        check: ForestCheck {
            is_forest: cycle.is_none(),
            cycle,
        },
        components,
        degrees,
    }
}

/// Union-find acyclicity check. Isolated vertices never affect the answer;
/// `_vertices` is accepted so callers can pass a graph's vertex set.
pub fn is_forest(_vertices: &BTreeSet<Node>, edges: &[Edge]) -> ForestCheck {
    analyze_edges(edges).check
}

/// Edges along the path from `from` to `to` in `forest`, which must be
/// acyclic and connect them.
fn tree_path(forest: &[Edge], from: Node, to: Node) -> Vec<Edge> {
    let mut adj: HashMap<Node, Vec<usize>> = HashMap::new();
    for (k, e) in forest.iter().enumerate() {
        adj.entry(e.lo()).or_default().push(k);
        adj.entry(e.hi()).or_default().push(k);
    }
    let mut via: HashMap<Node, usize> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for &k in adj.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
            let v = forest[k].other(u).expect("incident edge");
            if v != from && !via.contains_key(&v) {
                via.insert(v, k);
                queue.push_back(v);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to;
    while cur != from {
        let k = via[&cur];
        path.push(forest[k]);
        cur = forest[k].other(cur).expect("incident edge");
    }
    path.reverse();
    path
}

/// Number of connected components among the endpoints of `edges`.
pub fn touched_components(edges: &[Edge]) -> usize {
    analyze_edges(edges).components
}
