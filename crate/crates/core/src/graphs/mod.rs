//! Simple undirected graphs with structured vertex labels, and every graph
//! family built from a problem instance.

mod aux;
mod families;
mod iso;
mod product;

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

pub use aux::{aux_graph, AuxActivity, IndepSetChannel};
pub use families::{
    confusability, f_rook_graph, n_instance_graph, rook_graph, single_decoder_graph,
    single_decoder_n_instance, Mode, Side,
};
pub use iso::isomorphic;
pub use product::{and_power, or_power};

/// Vertex label: a source symbol or a tuple of labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Sym(String),
    Tuple(Vec<Label>),
}

impl Label {
    pub fn sym(s: impl Into<String>) -> Self {
        Label::Sym(s.into())
    }

    pub fn pair(a: Label, b: Label) -> Self {
        Label::Tuple(alloc::vec![a, b])
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Sym(s) => f.write_str(s),
            Label::Tuple(items) => {
                f.write_str("(")?;
                for (i, l) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{l}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Undirected simple graph. Adjacency lists are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<Label>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Loops and out-of-range endpoints are
    /// rejected; repeated edges collapse.
    pub fn new(labels: Vec<Label>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = labels.len();
        let mut adj = alloc::vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(alloc::format!(
                    "edge ({u},{v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(alloc::format!("loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { labels, adj })
    }

    /// Graph whose edges are the pairs `u < v` with `edge(u, v)`.
    pub fn from_fn(labels: Vec<Label>, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let n = labels.len();
        let mut adj = alloc::vec![Vec::new(); n];
        for u in 0..n {
            for v in u + 1..n {
                if edge(u, v) {
                    adj[u].push(v);
                    adj[v].push(u);
                }
            }
        }
        Graph { labels, adj }
    }

    pub(crate) fn from_sorted_adjacency(labels: Vec<Label>, adj: Vec<Vec<usize>>) -> Self {
        debug_assert!(adj.iter().all(|l| l.windows(2).all(|w| w[0] < w[1])));
        Graph { labels, adj }
    }

    /// Labels `0..n`.
    pub fn numbered(n: usize) -> Vec<Label> {
        (0..n).map(|i| Label::Sym(i.to_string())).collect()
    }

    pub fn empty(n: usize) -> Self {
        Graph::from_fn(Self::numbered(n), |_, _| false)
    }

    pub fn complete(n: usize) -> Self {
        Graph::from_fn(Self::numbered(n), |_, _| true)
    }

    /// Cycle `0-1-...-(n-1)-0`; needs `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        Graph::from_fn(Self::numbered(n), |u, v| v == u + 1 || (u == 0 && v == n - 1))
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &Label {
        &self.labels[v]
    }

    pub fn position(&self, label: &Label) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.labels.clone(), |u, v| !self.has_edge(u, v))
    }

    /// Induced subgraph on `vertices`, in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        Graph::from_fn(labels, |i, j| self.has_edge(vertices[i], vertices[j]))
    }

    /// Adjacency bitmasks when `n <= 64`.
    pub fn masks(&self) -> Option<Vec<u64>> {
        if self.n() > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|l| l.iter().fold(0u64, |m, &v| m | 1 << v))
                .collect(),
        )
    }

    /// True when `perm` maps `self` onto `other` edge for edge.
    pub fn maps_onto(&self, other: &Graph, perm: &[usize]) -> bool {
        if self.n() != other.n() || perm.len() != self.n() || self.edge_count() != other.edge_count() {
            return false;
        }
        let mut seen = alloc::vec![false; perm.len()];
        for &p in perm {
            if p >= seen.len() || core::mem::replace(&mut seen[p], true) {
                return false;
            }
        }
        self.edges()
            .into_iter()
            .all(|(u, v)| other.has_edge(perm[u], perm[v]))
    }

    fn same_vertices(&self, other: &Graph) -> Result<()> {
        if self.labels != other.labels {
            return Err(Error::VertexMismatch);
        }
        Ok(())
    }

    /// Edge-set union of two graphs on the same vertex list.
    pub fn union(&self, other: &Graph) -> Result<Graph> {
        self.same_vertices(other)?;
        let adj = self
            .adj
            .iter()
            .zip(&other.adj)
            .map(|(a, b)| {
                let mut l: Vec<usize> = a.iter().chain(b).copied().collect();
                l.sort_unstable();
                l.dedup();
                l
            })
            .collect();
        Ok(Graph::from_sorted_adjacency(self.labels.clone(), adj))
    }

    /// `E(self) ⊆ E(other)` for graphs on the same vertex list.
    pub fn edge_subset(&self, other: &Graph) -> Result<bool> {
        self.same_vertices(other)?;
        Ok(self.edges().into_iter().all(|(u, v)| other.has_edge(u, v)))
    }
}

/// List of vertex subsets, each independent in the graph it was checked against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndepSetFamily {
    pub sets: Vec<Vec<usize>>,
}

impl IndepSetFamily {
    pub fn new(g: &Graph, sets: Vec<Vec<usize>>) -> Result<Self> {
        for s in &sets {
            if s.iter().any(|&v| v >= g.n()) {
                return Err(Error::InvalidGraph(alloc::format!("set {s:?} names a vertex outside the graph")));
            }
            if !g.is_independent(s) {
                return Err(Error::InvalidGraph(alloc::format!("set {s:?} is not independent")));
            }
        }
        Ok(IndepSetFamily { sets })
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, set: usize, v: usize) -> bool {
        self.sets[set].contains(&v)
    }

    /// Label such as `{1,2}` using the graph's vertex labels.
    pub fn set_label(&self, g: &Graph, set: usize) -> String {
        let parts: Vec<String> = self.sets[set].iter().map(|&v| g.label(v).to_string()).collect();
        alloc::format!("{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_display() {
        let l = Label::pair(Label::sym("1"), Label::Tuple(alloc::vec![Label::sym("a"), Label::sym("b")]));
        assert_eq!(l.to_string(), "(1,(a,b))");
    }

    #[test]
    fn rejects_loops_and_dedupes() {
        assert!(Graph::new(Graph::numbered(3), [(1, 1)]).is_err());
        assert!(Graph::new(Graph::numbered(3), [(0, 3)]).is_err());
        let g = Graph::new(Graph::numbered(3), [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn union_is_idempotent() {
        let g = Graph::cycle(5);
        assert_eq!(g.union(&g).unwrap(), g);
        assert!(g.edge_subset(&Graph::complete(5)).unwrap());
        assert!(!Graph::complete(5).edge_subset(&g).unwrap());
        assert_eq!(g.union(&Graph::cycle(6)), Err(Error::VertexMismatch));
    }

    #[test]
    fn complement_of_c5_is_c5() {
        let c = Graph::cycle(5).complement();
        assert_eq!(c.edge_count(), 5);
        assert!(c.edges().iter().all(|&(u, v)| v - u == 2 || v - u == 3));
    }

    #[test]
    fn family_checks_independence() {
        let g = Graph::cycle(5);
        assert!(IndepSetFamily::new(&g, alloc::vec![alloc::vec![0, 2]]).is_ok());
        assert!(IndepSetFamily::new(&g, alloc::vec![alloc::vec![0, 1]]).is_err());
    }
}
