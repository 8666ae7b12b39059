//! Named graph families.
//!
//! Every generator numbers vertices deterministically; the textual
//! [`Family`] grammar used by the CLI is documented on [`Family::from_str`].

use std::fmt;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges")
}

/// `C_n`; for `n < 3` this degenerates to a path.
pub fn cycle(n: usize) -> Graph {
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    if n >= 3 {
        edges.push((n - 1, 0));
    }
    Graph::from_edges(n, edges).expect("cycle edges")
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("clique edges")
}

/// Star `K_{1,leaves}` with centre 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star edges")
}

/// Complete multipartite graph; parts are consecutive id ranges.
pub fn complete_multipartite(parts: &[usize]) -> Result<Graph> {
    if parts.len() < 2 || parts.contains(&0) {
        return Err(Error::param(
            "complete multipartite graph needs at least two nonempty parts",
        ));
    }
    let mut part_of = Vec::new();
    for (i, &size) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, size));
    }
    let n = part_of.len();
    let edges = (0..n).flat_map(|u| {
        let part_of = &part_of;
        (u + 1..n)
            .filter(move |&v| part_of[u] != part_of[v])
            .map(move |v| (u, v))
    });
    Graph::from_edges(n, edges)
}

/// `C_{(n-1),1}`: the cycle `0..n-1` with pendant `n-1` attached to 0.
pub fn cycle_with_pendant(n: usize) -> Result<Graph> {
    if n < 4 {
        return Err(Error::param("C_(n-1),1 needs n >= 4"));
    }
    unicyclic(n - 1, &[0])
}

/// A cycle on `0..m` plus tree vertices: vertex `m + i` hangs from
/// `parents[i]`, which must be an earlier vertex.
pub fn unicyclic(m: usize, parents: &[usize]) -> Result<Graph> {
    if m < 3 {
        return Err(Error::param("unicyclic graphs need a cycle of length >= 3"));
    }
    let n = m + parents.len();
    let mut edges: Vec<(usize, usize)> = cycle(m).edges().collect();
    for (i, &p) in parents.iter().enumerate() {
        if p >= m + i {
            return Err(Error::param(format!(
                "tree vertex {} must attach to an earlier vertex, got {p}",
                m + i
            )));
        }
        edges.push((p, m + i));
    }
    Graph::from_edges(n, edges)
}

/// Two triangles `{0,1,2}` and `{2,3,4}` sharing vertex 2.
pub fn bowtie() -> Graph {
    Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).expect("bowtie edges")
}

/// Fan on `n >= 3` vertices: apex 0 joined to the path `1..n`.
pub fn fan(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::param("fan needs at least 3 vertices"));
    }
    let edges = (1..n).map(|v| (0, v)).chain((2..n).map(|v| (v - 1, v)));
    Graph::from_edges(n, edges)
}

/// `K_4` minus the edge `{0,3}`.
pub fn diamond() -> Graph {
    Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).expect("diamond edges")
}

/// Join of `g` and `h`: disjoint union plus all edges between them. The
/// vertices of `h` are shifted by `|V(g)|`.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let off = g.order();
    let n = off + h.order();
    let edges = g
        .edges()
        .chain(h.edges().map(|(u, v)| (u + off, v + off)))
        .chain((0..off).flat_map(|u| (off..n).map(move |v| (u, v))))
        .collect::<Vec<_>>();
    Graph::from_edges(n, edges).expect("join edges")
}

/// A block for [`chain`], with the local ids glued to its predecessor
/// (`left`) and successor (`right`).
#[derive(Debug, Clone)]
pub struct ChainBlock {
    pub graph: Graph,
    pub left: usize,
    pub right: usize,
}

impl ChainBlock {
    /// Glues at the first and last local vertex.
    pub fn new(graph: Graph) -> Self {
        let right = graph.order().saturating_sub(1);
        Self {
            graph,
            left: 0,
            right,
        }
    }

    pub fn with_glue(graph: Graph, left: usize, right: usize) -> Self {
        Self { graph, left, right }
    }
}

/// 2-connected in the block sense: connected, at least two vertices and
/// no cut vertex (`K_2` qualifies).
pub fn is_biconnected(g: &Graph) -> bool {
    g.order() >= 2
        && g.is_connected()
        && g.block_decomposition()
            .map(|d| d.blocks.len() == 1)
            .unwrap_or(false)
}

/// Glues blocks into a chain: block `i`'s right glue vertex is identified
/// with block `i + 1`'s left glue vertex. The first block keeps its ids;
/// every later block's remaining vertices get fresh ids in local order.
pub fn chain(blocks: &[ChainBlock]) -> Result<Graph> {
    if blocks.is_empty() {
        return Err(Error::param("a chain needs at least one block"));
    }
    let last = blocks.len() - 1;
    for (i, b) in blocks.iter().enumerate() {
        if !is_biconnected(&b.graph) {
            return Err(Error::param(format!("chain block {i} is not 2-connected")));
        }
        let k = b.graph.order();
        if b.left >= k || b.right >= k {
            return Err(Error::param(format!("chain block {i} glue vertex out of range")));
        }
        if i > 0 && i < last && b.left == b.right {
            return Err(Error::param(format!(
                "chain block {i} uses the same vertex for both glue points"
            )));
        }
    }

    let mut edges = Vec::new();
    let mut next_id = 0;
    let mut carry = None;
    for b in blocks {
        let k = b.graph.order();
        let mut map = vec![usize::MAX; k];
        if let Some(shared) = carry {
            map[b.left] = shared;
        }
        for slot in map.iter_mut() {
            if *slot == usize::MAX {
                *slot = next_id;
                next_id += 1;
            }
        }
        edges.extend(b.graph.edges().map(|(u, v)| (map[u], map[v])));
        carry = Some(map[b.right]);
    }
    Graph::from_edges(next_id, edges)
}

/// Named blocks accepted by the chain grammar: `K<n>`, `C<n>`, `fan<n>`,
/// `diamond`.
pub fn named_block(name: &str) -> Result<Graph> {
    let bad = || Error::param(format!("unknown block `{name}`"));
    if name == "diamond" {
        return Ok(diamond());
    }
    if let Some(k) = name.strip_prefix("fan") {
        return fan(k.parse().map_err(|_| bad())?);
    }
    if let Some(k) = name.strip_prefix('K') {
        let k: usize = k.parse().map_err(|_| bad())?;
        if k < 2 {
            return Err(bad());
        }
        return Ok(complete(k));
    }
    if let Some(k) = name.strip_prefix('C') {
        let k: usize = k.parse().map_err(|_| bad())?;
        if k < 3 {
            return Err(bad());
        }
        return Ok(cycle(k));
    }
    Err(bad())
}

/// A parsed family description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Star(usize),
    Multipartite(Vec<usize>),
    CyclePendant(usize),
    Unicyclic { cycle: usize, parents: Vec<usize> },
    /// Blocks as `(name, left glue, right glue)`; `None` glue means default.
    Chain(Vec<(String, Option<(usize, usize)>)>),
    Bowtie,
}

impl Family {
    pub fn build(&self) -> Result<Graph> {
        match self {
            Family::Path(n) if *n >= 1 => Ok(path(*n)),
            Family::Cycle(n) if *n >= 3 => Ok(cycle(*n)),
            Family::Complete(n) if *n >= 1 => Ok(complete(*n)),
            Family::Star(n) if *n >= 1 => Ok(star(*n)),
            Family::Path(_) | Family::Complete(_) | Family::Star(_) => {
                Err(Error::param("family needs at least one vertex"))
            }
            Family::Cycle(_) => Err(Error::param("cycles need n >= 3")),
            Family::Multipartite(parts) => complete_multipartite(parts),
            Family::CyclePendant(n) => cycle_with_pendant(*n),
            Family::Unicyclic { cycle, parents } => unicyclic(*cycle, parents),
            Family::Chain(specs) => {
                let blocks = specs
                    .iter()
                    .map(|(name, glue)| {
                        let g = named_block(name)?;
                        Ok(match glue {
                            Some((l, r)) => ChainBlock::with_glue(g, *l, *r),
                            None => ChainBlock::new(g),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                chain(&blocks)
            }
            Family::Bowtie => Ok(bowtie()),
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::param(format!("expected a number, got `{t}`")))
        })
        .collect()
}

impl FromStr for Family {
    type Err = Error;

    /// Grammar:
    /// `path:N`, `cycle:N`, `complete:N`, `star:LEAVES`,
    /// `multipartite:A,B[,C...]`, `cycle-pendant:N`,
    /// `unicyclic:M:P1,P2,...`, `chain:B1,B2,...` where each block is a
    /// named block optionally followed by `@L-R` glue ids, and `bowtie`.
    fn from_str(s: &str) -> Result<Self> {
        let (head, rest) = s.split_once(':').unwrap_or((s, ""));
        let num = |t: &str| -> Result<usize> {
            t.parse()
                .map_err(|_| Error::param(format!("expected a number, got `{t}`")))
        };
        match head {
            "path" => Ok(Family::Path(num(rest)?)),
            "cycle" => Ok(Family::Cycle(num(rest)?)),
            "complete" => Ok(Family::Complete(num(rest)?)),
            "star" => Ok(Family::Star(num(rest)?)),
            "multipartite" => Ok(Family::Multipartite(parse_list(rest)?)),
            "cycle-pendant" => Ok(Family::CyclePendant(num(rest)?)),
            "unicyclic" => {
                let (m, parents) = rest.split_once(':').unwrap_or((rest, ""));
                Ok(Family::Unicyclic {
                    cycle: num(m)?,
                    parents: parse_list(parents)?,
                })
            }
            "chain" => {
                let specs = rest
                    .split(',')
                    .map(|tok| match tok.split_once('@') {
                        None => Ok((tok.to_string(), None)),
                        Some((name, glue)) => {
                            let (l, r) = glue
                                .split_once('-')
                                .ok_or_else(|| Error::param(format!("bad glue `{glue}`")))?;
                            Ok((name.to_string(), Some((num(l)?, num(r)?))))
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Family::Chain(specs))
            }
            "bowtie" => Ok(Family::Bowtie),
            other => Err(Error::param(format!("unknown family `{other}`"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::Star(n) => write!(f, "star:{n}"),
            Family::Multipartite(p) => write!(f, "multipartite:{}", join(p)),
            Family::CyclePendant(n) => write!(f, "cycle-pendant:{n}"),
            Family::Unicyclic { cycle, parents } => write!(f, "unicyclic:{cycle}:{}", join(parents)),
            Family::Chain(specs) => {
                let toks: Vec<String> = specs
                    .iter()
                    .map(|(name, glue)| match glue {
                        Some((l, r)) => format!("{name}@{l}-{r}"),
                        None => name.clone(),
                    })
                    .collect();
                write!(f, "chain:{}", toks.join(","))
            }
            Family::Bowtie => write!(f, "bowtie"),
        }
    }
}
