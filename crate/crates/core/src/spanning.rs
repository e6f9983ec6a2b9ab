//! Minimum and maximum spanning trees of a finite metric space and their
//! edge-length spectra.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{FiniteMetricSpace, PointSet};
use crate::partition::Partition;

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TreeKind {
    #[serde(rename = "min")]
    Minimum,
    #[serde(rename = "max")]
    Maximum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "(usize, usize, f64)", into = "(usize, usize, f64)")]
pub struct TreeEdge {
    pub i: usize,
    pub j: usize,
    pub length: f64,
}

impl From<(usize, usize, f64)> for TreeEdge {
    fn from((i, j, length): (usize, usize, f64)) -> Self {
        Self { i, j, length }
    }
}

impl From<TreeEdge> for (usize, usize, f64) {
    fn from(e: TreeEdge) -> Self {
        (e.i, e.j, e.length)
    }
}

/// A spanning tree on the points of a space. Edges are stored with `i < j`
/// in the order the greedy construction accepted them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpanningTree {
    pub kind: TreeKind,
    pub edges: Vec<TreeEdge>,
    pub total: f64,
}

impl SpanningTree {
    pub fn point_count(&self) -> usize {
        self.edges.len() + 1
    }

    /// Edges reordered so their lengths follow the tree's spectrum:
    /// descending for a minimum tree, ascending for a maximum tree.
    pub fn edges_in_spectrum_order(&self) -> Vec<TreeEdge> {
        let mut edges = self.edges.clone();
        match self.kind {
            TreeKind::Minimum => edges.sort_by(|a, b| b.length.total_cmp(&a.length)),
            TreeKind::Maximum => edges.sort_by(|a, b| a.length.total_cmp(&b.length)),
        }
        edges
    }

    /// Vertex sets of the forest left after deleting `removed` edges.
    pub fn components_without(&self, removed: &[TreeEdge]) -> Partition {
        let n = self.point_count();
        let mut uf = UnionFind::new(n);
        for e in &self.edges {
            let gone = removed.iter().any(|r| r.i == e.i && r.j == e.j);
            if !gone {
                uf.union(e.i, e.j);
            }
        }
        let labels: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();
        Partition::from_labels(&labels)
    }

    pub fn spectrum(&self) -> Spectrum {
        let values = self.edges_in_spectrum_order().iter().map(|e| e.length).collect();
        Spectrum {
            values,
            order: match self.kind {
                TreeKind::Minimum => SpectrumOrder::Descending,
                TreeKind::Maximum => SpectrumOrder::Ascending,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tree serialization cannot fail")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumOrder {
    Descending,
    Ascending,
}

/// Sorted tree edge lengths: `σ` (descending) or `Σ` (ascending).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub order: SpectrumOrder,
}

impl Spectrum {
    /// The `k`-th entry, counting from 1 as in `σ_1, …, σ_{n−1}`.
    pub fn get(&self, k: usize) -> Option<f64> {
        k.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_monotone(&self) -> bool {
        self.values.windows(2).all(|w| match self.order {
            SpectrumOrder::Descending => w[0] >= w[1],
            SpectrumOrder::Ascending => w[0] <= w[1],
        })
    }
}

fn all_edges(x: &FiniteMetricSpace) -> Vec<(usize, usize)> {
    x.pairs().map(|(i, j, _)| (i, j)).collect()
}

/// Greedy tree over `edges`, which are stably sorted by length first, so
/// their given order breaks ties.
pub fn spanning_tree_from_edge_order(
    x: &FiniteMetricSpace,
    kind: TreeKind,
    mut edges: Vec<(usize, usize)>,
) -> Result<SpanningTree> {
    let n = x.len();
    if n < 2 {
        return Err(Error::SinglePointSpace);
    }
    for &(i, j) in &edges {
        if i >= n || j >= n {
            return Err(Error::IndexOutOfRange { index: i.max(j), n });
        }
    }
    match kind {
        TreeKind::Minimum => edges.sort_by(|a, b| x.d(a.0, a.1).total_cmp(&x.d(b.0, b.1))),
        TreeKind::Maximum => edges.sort_by(|a, b| x.d(b.0, b.1).total_cmp(&x.d(a.0, a.1))),
    }
    let mut uf = UnionFind::new(n);
    let mut tree = Vec::with_capacity(n - 1);
    for (i, j) in edges {
        if i != j && uf.union(i, j) {
            let (i, j) = (i.min(j), i.max(j));
            tree.push(TreeEdge {
                i,
                j,
                length: x.d(i, j),
            });
            if tree.len() == n - 1 {
                break;
            }
        }
    }
    if tree.len() != n - 1 {
        return Err(Error::DimensionMismatch(
            "edge list does not connect the space".into(),
        ));
    }
    let total = tree.iter().map(|e| e.length).sum();
    Ok(SpanningTree {
        kind,
        edges: tree,
        total,
    })
}

/// Kruskal's algorithm with ties broken by lexicographic `(i, j)`.
pub fn minimum_spanning_tree(x: &FiniteMetricSpace) -> Result<SpanningTree> {
    spanning_tree_from_edge_order(x, TreeKind::Minimum, all_edges(x))
}

/// Kruskal's algorithm on descending lengths, ties by lexicographic `(i, j)`.
pub fn maximum_spanning_tree(x: &FiniteMetricSpace) -> Result<SpanningTree> {
    spanning_tree_from_edge_order(x, TreeKind::Maximum, all_edges(x))
}

/// `σ(X)`: minimum spanning tree edge lengths, descending.
pub fn mst_spectrum(x: &FiniteMetricSpace) -> Result<Spectrum> {
    Ok(minimum_spanning_tree(x)?.spectrum())
}

/// `Σ(X)`: maximum spanning tree edge lengths, ascending.
pub fn xst_spectrum(x: &FiniteMetricSpace) -> Result<Spectrum> {
    Ok(maximum_spanning_tree(x)?.spectrum())
}

/// The two vertex sets on either side of a tree edge.
pub fn sides_of_edge(tree: &SpanningTree, edge: &TreeEdge) -> (PointSet, PointSet) {
    let parts = tree.components_without(std::slice::from_ref(edge));
    let blocks = parts.blocks();
    (blocks[0].clone(), blocks[1].clone())
}
