use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    Cartesian,
    Strong,
    Lexicographic,
}

impl ProductKind {
    pub const ALL: [ProductKind; 3] = [
        ProductKind::Cartesian,
        ProductKind::Strong,
        ProductKind::Lexicographic,
    ];

    /// Adjacency rule on coordinate pairs.
    fn adjacent(self, g: &Graph, h: &Graph, (g1, h1): (usize, usize), (g2, h2): (usize, usize)) -> bool {
        let gg = g.has_edge(g1, g2);
        let hh = h.has_edge(h1, h2);
        match self {
            ProductKind::Cartesian => (gg && h1 == h2) || (g1 == g2 && hh),
            ProductKind::Strong => (gg && h1 == h2) || (g1 == g2 && hh) || (gg && hh),
            ProductKind::Lexicographic => gg || (g1 == g2 && hh),
        }
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProductKind::Cartesian => "cartesian",
            ProductKind::Strong => "strong",
            ProductKind::Lexicographic => "lexicographic",
        })
    }
}

impl FromStr for ProductKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cartesian" | "box" => Ok(ProductKind::Cartesian),
            "strong" => Ok(ProductKind::Strong),
            "lexicographic" | "lex" => Ok(ProductKind::Lexicographic),
            other => Err(Error::param(format!("unknown product kind `{other}`"))),
        }
    }
}

/// A product graph with its coordinate map. Vertex `(g, h)` has flat id
/// `g * |V(H)| + h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Product {
    pub graph: Graph,
    pub kind: ProductKind,
    left_order: usize,
    right_order: usize,
}

impl Product {
    pub fn new(g: &Graph, h: &Graph, kind: ProductKind) -> Result<Self> {
        if g.order() == 0 || h.order() == 0 {
            return Err(Error::EmptyGraph);
        }
        let (ng, nh) = (g.order(), h.order());
        let mut edges = Vec::new();
        for a in 0..ng * nh {
            for b in a + 1..ng * nh {
                if kind.adjacent(g, h, (a / nh, a % nh), (b / nh, b % nh)) {
                    edges.push((a, b));
                }
            }
        }
        Ok(Self {
            graph: Graph::from_edges(ng * nh, edges)?,
            kind,
            left_order: ng,
            right_order: nh,
        })
    }

    pub fn id(&self, g: usize, h: usize) -> usize {
        assert!(g < self.left_order && h < self.right_order);
        g * self.right_order + h
    }

    pub fn coords(&self, id: usize) -> (usize, usize) {
        assert!(id < self.graph.order());
        (id / self.right_order, id % self.right_order)
    }
}

impl Graph {
    pub fn product(&self, other: &Graph, kind: ProductKind) -> Result<Product> {
        Product::new(self, other, kind)
    }
}
