//! Simple graphs, ±1 edge-colored graphs, edge-list parsing and elementary
//! structural queries.

mod basics;
mod parse;

pub use basics::{graph_basics, GraphBasics};
pub use parse::{
    parse_colored_edge_list, parse_edge_list, write_colored_edge_list, write_edge_list,
};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted lexicographically;
/// the position of an edge in [`Graph::edges`] is its *edge index*.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;
    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::new(r.n, r.edges)
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges,
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    /// Build a graph, normalizing edge orientation and collapsing duplicates.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut es = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::structural(format!("loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::structural(format!(
                    "edge ({u},{v}) has an endpoint >= n = {n}"
                )));
            }
            es.push((u.min(v), u.max(v)));
        }
        es.sort_unstable();
        es.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &es {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
        }
        Ok(Graph { n, edges: es, adj })
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph::new(n, []).expect("valid")
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("valid")
    }

    /// Number of vertices `|G|`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges `e(G)`.
    pub fn e(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Index of edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// Minimum degree `δ(G)` (0 for the empty vertex set).
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Adjacency rows as 64-bit masks. Panics if `n > 64`.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitmask adjacency needs n <= 64");
        (0..self.n)
            .map(|v| self.adj[v].iter().fold(0u64, |m, &w| m | (1 << w)))
            .collect()
    }

    /// The image of this graph under `perm` (vertex `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        check_perm(perm, self.n)?;
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let off = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        Graph::new(self.n + other.n, edges).expect("valid")
    }

    /// Number of edges between two disjoint vertex sets given as membership flags.
    pub fn edges_between(&self, a: &[bool], b: &[bool]) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| (a[u] && b[v]) || (a[v] && b[u]))
            .count()
    }
}

pub(crate) fn check_perm(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::structural("permutation has the wrong length"));
    }
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::structural("not a permutation"));
        }
        seen[p] = true;
    }
    Ok(())
}

/// An edge color, `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.value())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Sign::from_value(v).ok_or_else(|| serde::de::Error::custom("edge color must be +1 or -1"))
    }
}

/// A graph together with a `±1` color on every edge.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ColoredRepr", into = "ColoredRepr")]
pub struct ColoredGraph {
    graph: Graph,
    /// `colors[i]` is the color of `graph.edges()[i]`.
    colors: Vec<Sign>,
}

#[derive(Serialize, Deserialize)]
struct ColoredRepr {
    n: usize,
    edges: Vec<(usize, usize, Sign)>,
}

impl TryFrom<ColoredRepr> for ColoredGraph {
    type Error = Error;
    fn try_from(r: ColoredRepr) -> Result<Self> {
        ColoredGraph::from_colored_edges(r.n, r.edges)
    }
}

impl From<ColoredGraph> for ColoredRepr {
    fn from(g: ColoredGraph) -> Self {
        ColoredRepr {
            n: g.graph.n,
            edges: g
                .graph
                .edges
                .iter()
                .zip(&g.colors)
                .map(|(&(u, v), &c)| (u, v, c))
                .collect(),
        }
    }
}

impl fmt::Debug for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let es: Vec<String> = self
            .graph
            .edges
            .iter()
            .zip(&self.colors)
            .map(|(&(u, v), c)| format!("{u}{v}{}", if *c == Sign::Plus { '+' } else { '-' }))
            .collect();
        write!(f, "ColoredGraph(n={}, [{}])", self.graph.n, es.join(" "))
    }
}

impl ColoredGraph {
    /// Pair a graph with colors listed in edge-index order.
    pub fn new(graph: Graph, colors: Vec<Sign>) -> Result<Self> {
        if colors.len() != graph.e() {
            return Err(Error::structural(format!(
                "{} colors for {} edges",
                colors.len(),
                graph.e()
            )));
        }
        Ok(ColoredGraph { graph, colors })
    }

    /// Build from `(u, v, color)` triples. Repeated edges must agree on color.
    pub fn from_colored_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, Sign)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (u, v, c) in edges {
            let key = (u.min(v), u.max(v));
            if let Some(old) = map.insert(key, c) {
                if old != c {
                    return Err(Error::structural(format!(
                        "edge ({u},{v}) listed with both colors"
                    )));
                }
            }
        }
        let graph = Graph::new(n, map.keys().copied())?;
        let colors = graph.edges().iter().map(|k| map[k]).collect();
        Ok(ColoredGraph { graph, colors })
    }

    /// Color every edge of `graph` by `f(u, v)`.
    pub fn from_fn(graph: Graph, mut f: impl FnMut(usize, usize) -> Sign) -> Self {
        let colors = graph.edges().iter().map(|&(u, v)| f(u, v)).collect();
        ColoredGraph { graph, colors }
    }

    /// Every edge of `graph` colored `c`.
    pub fn monochromatic(graph: Graph, c: Sign) -> Self {
        ColoredGraph::from_fn(graph, |_, _| c)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n
    }

    pub fn colors(&self) -> &[Sign] {
        &self.colors
    }

    /// Color of edge `{u, v}`, if present.
    pub fn color(&self, u: usize, v: usize) -> Option<Sign> {
        self.graph.edge_index(u, v).map(|i| self.colors[i])
    }

    /// `c(G) = e(G⁺) − e(G⁻)`.
    pub fn discrepancy(&self) -> i64 {
        self.colors.iter().map(|c| c.value()).sum()
    }

    /// Number of `+1` edges.
    pub fn positive_edges(&self) -> usize {
        self.colors.iter().filter(|&&c| c == Sign::Plus).count()
    }

    /// The same graph with every color flipped.
    pub fn negated(&self) -> Self {
        ColoredGraph {
            graph: self.graph.clone(),
            colors: self.colors.iter().map(|c| c.flip()).collect(),
        }
    }

    /// The image under the vertex permutation `perm`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        check_perm(perm, self.graph.n)?;
        ColoredGraph::from_colored_edges(
            self.graph.n,
            self.graph
                .edges
                .iter()
                .zip(&self.colors)
                .map(|(&(u, v), &c)| (perm[u], perm[v], c)),
        )
    }

    /// Degree of `v` in the `+1` subgraph.
    pub fn positive_degree(&self, v: usize) -> usize {
        self.graph
            .neighbors(v)
            .iter()
            .filter(|&&w| self.color(v, w) == Some(Sign::Plus))
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_normalizes_edges() {
        let g = Graph::new(4, [(2, 1), (1, 2), (0, 3)]).unwrap();
        assert_eq!(g.edges(), &[(0, 3), (1, 2)]);
        assert!(g.has_edge(3, 0));
        assert_eq!(g.edge_index(2, 1), Some(1));
        assert!(Graph::new(2, [(0, 0)]).is_err());
        assert!(Graph::new(2, [(0, 2)]).is_err());
    }

    #[test]
    fn discrepancy_identity() {
        let g = Graph::complete(4);
        let c = ColoredGraph::from_fn(g, |u, _| if u == 0 { Sign::Plus } else { Sign::Minus });
        assert_eq!(c.discrepancy(), 0);
        assert_eq!(c.discrepancy(), 2 * c.positive_edges() as i64 - c.graph().e() as i64);
        assert_eq!(c.negated().discrepancy(), -c.discrepancy());
    }

    #[test]
    fn conflicting_colors_rejected() {
        let r = ColoredGraph::from_colored_edges(2, [(0, 1, Sign::Plus), (1, 0, Sign::Minus)]);
        assert!(r.is_err());
    }

    #[test]
    fn serde_round_trip() {
        let g = ColoredGraph::from_colored_edges(3, [(0, 1, Sign::Plus), (1, 2, Sign::Minus)])
            .unwrap();
        let s = serde_json::to_string(&g).unwrap();
        let back: ColoredGraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }
}
