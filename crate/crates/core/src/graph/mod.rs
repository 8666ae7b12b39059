//! Simple undirected graphs over dense vertex ids, with the decompositions,
//! recognizers, generators and products the convexity code builds on.

mod blocks;
mod chordal;
pub mod generate;
pub mod io;
mod product;

use std::collections::VecDeque;

pub use blocks::{BlockCutNode, BlockDecomposition};
pub use chordal::{is_perfect_elimination_ordering, lex_bfs, ChordalVerdict};
pub use product::{Product, ProductKind};

use crate::error::{Error, Result};
use crate::set::VertexSet;

/// An immutable simple undirected graph on the vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse into one; self-loops and out-of-range ids are
    /// rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![VertexSet::empty(n); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if adj[u].insert(v) {
                adj[v].insert(u);
                edge_count += 1;
            }
        }
        Ok(Self { adj, edge_count })
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![VertexSet::empty(n); n],
            edge_count: 0,
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.edge_count
    }

    /// `V(G)` as a set.
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    /// Open neighbourhood `N(v)`.
    pub fn neighbors(&self, v: usize) -> Result<&VertexSet> {
        self.adj.get(v).ok_or(Error::VertexOutOfRange {
            vertex: v,
            n: self.order(),
        })
    }

    /// Open neighbourhood without the range check.
    #[inline]
    pub fn adj(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    /// Closed neighbourhood `N[v]`.
    pub fn closed_neighbors(&self, v: usize) -> Result<VertexSet> {
        Ok(self.neighbors(v)?.with(v))
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub(crate) fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.universe() != self.order() {
            return Err(Error::param(format!(
                "vertex set over {} ids used with a graph of order {}",
                s.universe(),
                self.order()
            )));
        }
        Ok(())
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.order() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.order(),
            });
        }
        Ok(())
    }

    /// Vertex sets of the components of `G[s]`, ordered by smallest member.
    pub fn connected_components(&self, s: &VertexSet) -> Result<Vec<VertexSet>> {
        self.check_set(s)?;
        Ok(self.components_unchecked(s))
    }

    pub(crate) fn components_unchecked(&self, s: &VertexSet) -> Vec<VertexSet> {
        let mut rest = s.clone();
        let mut out = Vec::new();
        while let Some(root) = rest.first() {
            let comp = self.component_within(root, &rest);
            rest.difference_with(&comp);
            out.push(comp);
        }
        out
    }

    /// The component of `root` in `G[within]`.
    pub(crate) fn component_within(&self, root: usize, within: &VertexSet) -> VertexSet {
        let mut comp = VertexSet::singleton(self.order(), root);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for w in self.adj[u].iter() {
                if within.contains(w) && comp.insert(w) {
                    stack.push(w);
                }
            }
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        match self.order() {
            0 => false,
            _ => self.component_within(0, &self.vertices()).len() == self.order(),
        }
    }

    /// Whether `G[s]` is connected (the empty set is not).
    pub fn induces_connected(&self, s: &VertexSet) -> bool {
        match s.first() {
            None => false,
            Some(root) => self.component_within(root, s).len() == s.len(),
        }
    }

    /// Errors unless the graph is nonempty and connected.
    pub fn require_connected(&self) -> Result<()> {
        if self.order() == 0 {
            return Err(Error::EmptyGraph);
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    /// The subgraph induced by `s`, relabelled to `0..|s|` in ascending id
    /// order, together with the map from new ids back to old ones.
    pub fn induced(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let ids = s.to_vec();
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in ids.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges()
            .filter(|&(u, v)| s.contains(u) && s.contains(v))
            .map(|(u, v)| (index[u], index[v]));
        let g = Graph::from_edges(ids.len(), edges).expect("induced edges are valid");
        (g, ids)
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let edges = (0..n).flat_map(|u| {
            (u + 1..n)
                .filter(move |&v| !self.adj[u].contains(v))
                .map(move |v| (u, v))
        });
        Graph::from_edges(n, edges).expect("complement edges are valid")
    }

    /// BFS distances from `source`; `None` marks unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        self.distances_within(source, &self.vertices())
    }

    /// BFS distances from `source` inside `G[within]`.
    pub fn distances_within(&self, source: usize, within: &VertexSet) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        if !within.contains(source) {
            return dist;
        }
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for w in self.adj[u].iter() {
                if within.contains(w) && dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Largest shortest-path distance over all pairs.
    pub fn diameter(&self) -> Result<usize> {
        self.require_connected()?;
        Ok((0..self.order())
            .map(|s| self.distances_from(s).into_iter().flatten().max().unwrap_or(0))
            .max()
            .unwrap_or(0))
    }

    /// Vertices adjacent to every other vertex.
    pub fn universal_vertices(&self) -> VertexSet {
        let n = self.order();
        VertexSet::from_ids(n, (0..n).filter(|&v| self.degree(v) + 1 == n))
    }

    /// Whether `s` induces a clique.
    pub fn is_clique(&self, s: &VertexSet) -> bool {
        let k = s.len();
        s.iter().all(|v| self.adj[v].intersection_len(s) + 1 == k)
    }

    /// Whether the graph is a single cycle `C_n`, `n >= 3`.
    pub fn is_cycle(&self) -> bool {
        self.order() >= 3
            && self.size() == self.order()
            && (0..self.order()).all(|v| self.degree(v) == 2)
            && self.is_connected()
    }

    pub fn is_tree(&self) -> bool {
        self.order() >= 1 && self.size() + 1 == self.order() && self.is_connected()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.size() == n * n.saturating_sub(1) / 2
    }

    /// Vertices lying on at least one cycle (equivalently, in a block of
    /// order at least three).
    pub fn cycle_vertices(&self) -> VertexSet {
        let n = self.order();
        let mut out = VertexSet::empty(n);
        for u in 0..n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                // uv lies on a cycle iff v stays reachable from u without the edge.
                if self.reachable_without_edge(u, v) {
                    out.insert(u);
                    out.insert(v);
                }
            }
        }
        out
    }

    fn reachable_without_edge(&self, u: usize, v: usize) -> bool {
        let mut seen = VertexSet::singleton(self.order(), u);
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            for y in self.adj[x].iter() {
                if x == u && y == v {
                    continue;
                }
                if y == v {
                    return true;
                }
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        false
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{complete, cycle, path};

    #[test]
    fn neighbors_examples() {
        assert_eq!(path(3).neighbors(1).unwrap().to_vec(), vec![0, 2]);
        assert_eq!(complete(3).neighbors(0).unwrap().to_vec(), vec![1, 2]);
        assert_eq!(cycle(4).neighbors(0).unwrap().to_vec(), vec![1, 3]);
        assert!(matches!(
            path(3).neighbors(3),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn components_examples() {
        let c4 = cycle(4);
        let comps = c4
            .connected_components(&VertexSet::from_ids(4, [0, 2]))
            .unwrap();
        assert_eq!(comps.iter().map(|c| c.to_vec()).collect::<Vec<_>>(), vec![vec![0], vec![2]]);
        let comps = c4
            .connected_components(&VertexSet::from_ids(4, [0, 1, 2]))
            .unwrap();
        assert_eq!(comps.len(), 1);
        assert!(c4.connected_components(&VertexSet::empty(4)).unwrap().is_empty());
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, [(0, 0)]), Err(Error::SelfLoop(0)));
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { .. })
        ));
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.size(), 1);
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(complete(5).diameter().unwrap(), 1);
        assert_eq!(path(4).diameter().unwrap(), 3);
        assert_eq!(cycle(6).diameter().unwrap(), 3);
        assert_eq!(Graph::empty(2).diameter(), Err(Error::Disconnected));
        assert_eq!(Graph::empty(0).diameter(), Err(Error::EmptyGraph));
    }

    #[test]
    fn cycle_vertices_of_paw() {
        // triangle 0-1-2 with pendant 3 on 0
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap();
        assert_eq!(g.cycle_vertices().to_vec(), vec![0, 1, 2]);
    }
}
