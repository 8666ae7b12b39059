use serde::Serialize;

use super::Graph;
use crate::error::Result;
use crate::set::VertexSet;

/// Node of the block-cut tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BlockCutNode {
    /// Index into [`BlockDecomposition::blocks`].
    Block(usize),
    /// A cut vertex id.
    Cut(usize),
}

/// Blocks, cut vertices and block-cut tree of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    /// Vertex sets of the maximal 2-connected subgraphs (bridges count as
    /// `K_2` blocks), ordered by their sorted member lists.
    pub blocks: Vec<VertexSet>,
    pub cut_vertices: VertexSet,
    /// Edges `(block index, cut vertex)` of the bipartite block-cut tree.
    pub tree_edges: Vec<(usize, usize)>,
}

impl BlockDecomposition {
    /// Indices of blocks containing `v`.
    pub fn blocks_containing(&self, v: usize) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| self.blocks[b].contains(v))
            .collect()
    }

    /// Cut vertices lying in block `b`.
    pub fn cuts_of(&self, b: usize) -> VertexSet {
        self.blocks[b].intersection(&self.cut_vertices)
    }

    /// Blocks containing exactly one cut vertex.
    pub fn end_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| self.cuts_of(b).len() == 1)
            .collect()
    }

    /// Neighbours of a node in the block-cut tree.
    pub fn tree_neighbors(&self, node: BlockCutNode) -> Vec<BlockCutNode> {
        match node {
            BlockCutNode::Block(b) => self
                .tree_edges
                .iter()
                .filter(|e| e.0 == b)
                .map(|e| BlockCutNode::Cut(e.1))
                .collect(),
            BlockCutNode::Cut(c) => self
                .tree_edges
                .iter()
                .filter(|e| e.1 == c)
                .map(|e| BlockCutNode::Block(e.0))
                .collect(),
        }
    }

    /// If the block-cut tree is a path, the blocks in order along it,
    /// starting from the end whose first block has the smaller index.
    pub fn block_chain(&self) -> Option<Vec<usize>> {
        let nb = self.blocks.len();
        if nb == 1 {
            return Some(vec![0]);
        }
        // Every cut vertex joins exactly two blocks and every block meets at
        // most two cut vertices.
        for c in self.cut_vertices.iter() {
            if self.blocks_containing(c).len() != 2 {
                return None;
            }
        }
        if (0..nb).any(|b| self.cuts_of(b).len() > 2) {
            return None;
        }
        let ends = self.end_blocks();
        if ends.len() != 2 {
            return None;
        }
        let mut order = vec![ends[0]];
        let mut prev_cut = None;
        while order.len() < nb {
            let b = *order.last().unwrap();
            let next_cut = self.cuts_of(b).iter().find(|&c| Some(c) != prev_cut)?;
            let next = *self
                .blocks_containing(next_cut)
                .iter()
                .find(|&&x| x != b)?;
            order.push(next);
            prev_cut = Some(next_cut);
        }
        Some(order)
    }
}

impl Graph {
    /// Blocks and cut vertices via the Hopcroft-Tarjan lowpoint DFS.
    pub fn block_decomposition(&self) -> Result<BlockDecomposition> {
        self.require_connected()?;
        let n = self.order();
        if n == 1 {
            return Ok(BlockDecomposition {
                blocks: vec![VertexSet::full(1)],
                cut_vertices: VertexSet::empty(1),
                tree_edges: Vec::new(),
            });
        }
        let lists: Vec<Vec<usize>> = (0..n).map(|v| self.adj(v).to_vec()).collect();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut parent = vec![usize::MAX; n];
        let mut cursor = vec![0usize; n];
        let mut edge_stack: Vec<(usize, usize)> = Vec::new();
        let mut blocks = Vec::new();
        let mut time = 0;

        disc[0] = 0;
        low[0] = 0;
        time += 1;
        let mut stack = vec![0usize];
        while let Some(&v) = stack.last() {
            if cursor[v] < lists[v].len() {
                let w = lists[v][cursor[v]];
                cursor[v] += 1;
                if disc[w] == usize::MAX {
                    parent[w] = v;
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    edge_stack.push((v, w));
                    stack.push(w);
                } else if w != parent[v] && disc[w] < disc[v] {
                    low[v] = low[v].min(disc[w]);
                    edge_stack.push((v, w));
                }
            } else {
                stack.pop();
                let u = parent[v];
                if u == usize::MAX {
                    continue;
                }
                low[u] = low[u].min(low[v]);
                if low[v] >= disc[u] {
                    let mut block = VertexSet::empty(n);
                    while let Some((a, b)) = edge_stack.pop() {
                        block.insert(a);
                        block.insert(b);
                        if (a, b) == (u, v) {
                            break;
                        }
                    }
                    blocks.push(block);
                }
            }
        }

        blocks.sort_by_key(|b| b.to_vec());
        let mut cut_vertices = VertexSet::empty(n);
        for v in 0..n {
            if blocks.iter().filter(|b| b.contains(v)).count() >= 2 {
                cut_vertices.insert(v);
            }
        }
        let mut tree_edges = Vec::new();
        for (i, b) in blocks.iter().enumerate() {
            for c in b.intersection(&cut_vertices).iter() {
                tree_edges.push((i, c));
            }
        }
        Ok(BlockDecomposition {
            blocks,
            cut_vertices,
            tree_edges,
        })
    }
}
