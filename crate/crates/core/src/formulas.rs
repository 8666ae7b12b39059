//! Closed-form exchange numbers for the resolved graph classes and
//! products, with the block-structure recognizers they depend on.

use std::time::Duration;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BlockDecomposition, Graph, ProductKind};
use crate::independence::{
    exchange_number_exact, exchange_set_at_least, is_e_independent, pair_certificate,
    ExchangeCertificate, SearchBudget, SearchOutcome, DEFAULT_EXACT_CAP,
};
use crate::set::VertexSet;

/// The blocks of a graph read as a chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainStructure {
    /// Blocks in chain order when `is_single_chain`, otherwise in
    /// decomposition order.
    pub blocks_in_order: Vec<VertexSet>,
    pub is_single_chain: bool,
    /// Longest run of consecutive non-`K_2` blocks along the chain (0 when
    /// the graph is not a single chain).
    pub longest_non_k2_chain_length: usize,
    pub has_k2_blocks: bool,
}

/// Edge `uv` and vertex `x` with both distances at least two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeVertexWitness {
    pub u: usize,
    pub v: usize,
    pub x: usize,
}

/// Cut vertex `c`, `x ∈ N(c)` and `y` outside `C(G) ∪ N(c) ∪ N(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SeparationWitness {
    pub x: usize,
    pub y: usize,
    pub c: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub block: VertexSet,
    /// At most one cut vertex: a lone block is its own end block.
    pub is_end_block: bool,
    pub edge_vertex: Option<EdgeVertexWitness>,
    pub vertex_separation: Option<SeparationWitness>,
}

fn require_block(dec: &BlockDecomposition, block: &VertexSet) -> Result<()> {
    if dec.blocks.contains(block) {
        Ok(())
    } else {
        Err(Error::NotABlock)
    }
}

/// Lowest `(u, v, x)` (edge first) with `d(u,x), d(v,x) >= 2`, distances
/// taken inside `G[block]`.
pub fn edge_vertex_property(g: &Graph, block: &VertexSet) -> Result<Option<EdgeVertexWitness>> {
    g.check_set(block)?;
    require_block(&g.block_decomposition()?, block)?;
    Ok(edge_vertex_unchecked(g, block))
}

/// The edge-vertex condition on the whole graph, distances taken in `g`.
pub fn graph_edge_vertex(g: &Graph) -> Option<EdgeVertexWitness> {
    edge_vertex_unchecked(g, &g.vertices())
}

fn edge_vertex_unchecked(g: &Graph, block: &VertexSet) -> Option<EdgeVertexWitness> {
    let far = |d: Option<usize>| d.is_none_or(|d| d >= 2);
    let dist: Vec<_> = (0..g.order())
        .map(|v| block.contains(v).then(|| g.distances_within(v, block)))
        .collect();
    for (u, v) in g.edges().filter(|&(u, v)| block.contains(u) && block.contains(v)) {
        let (du, dv) = (dist[u].as_ref()?, dist[v].as_ref()?);
        if let Some(x) = block.iter().find(|&x| far(du[x]) && far(dv[x])) {
            return Some(EdgeVertexWitness { u, v, x });
        }
    }
    None
}

/// Lowest `(c, x, y)` satisfying the vertex-separation condition for
/// `block`, with `c` a cut vertex of `g` lying in the block; neighbourhoods
/// are taken in `g`.
pub fn vertex_separation_property(
    g: &Graph,
    block: &VertexSet,
) -> Result<Option<SeparationWitness>> {
    g.check_set(block)?;
    let dec = g.block_decomposition()?;
    require_block(&dec, block)?;
    Ok(separation_unchecked(g, &dec.cut_vertices, block))
}

fn separation_unchecked(g: &Graph, cuts: &VertexSet, block: &VertexSet) -> Option<SeparationWitness> {
    for c in cuts.intersection(block).iter() {
        for x in block.iter().filter(|&x| g.has_edge(x, c)) {
            let mut banned = cuts.union(g.adj(c));
            banned.union_with(g.adj(x));
            if let Some(y) = block.difference(&banned).first() {
                return Some(SeparationWitness { x, y, c });
            }
        }
    }
    None
}

/// Property report for every block, in decomposition order.
pub fn block_reports(g: &Graph) -> Result<Vec<BlockReport>> {
    let dec = g.block_decomposition()?;
    let ends = dec.end_blocks();
    Ok(dec
        .blocks
        .iter()
        .enumerate()
        .map(|(i, b)| BlockReport {
            block: b.clone(),
            is_end_block: dec.blocks.len() == 1 || ends.contains(&i),
            edge_vertex: edge_vertex_unchecked(g, b),
            vertex_separation: separation_unchecked(g, &dec.cut_vertices, b),
        })
        .collect())
}

pub fn chain_structure(g: &Graph) -> Result<ChainStructure> {
    let dec = g.block_decomposition()?;
    let has_k2_blocks = dec.blocks.iter().any(|b| b.len() == 2);
    Ok(match dec.block_chain() {
        Some(order) => {
            let blocks: Vec<VertexSet> = order.iter().map(|&i| dec.blocks[i].clone()).collect();
            let mut best = 0;
            let mut run = 0;
            for b in &blocks {
                run = if b.len() == 2 { 0 } else { run + 1 };
                best = best.max(run);
            }
            ChainStructure {
                blocks_in_order: blocks,
                is_single_chain: true,
                longest_non_k2_chain_length: best,
                has_k2_blocks,
            }
        }
        None => ChainStructure {
            blocks_in_order: dec.blocks.clone(),
            is_single_chain: false,
            longest_non_k2_chain_length: 0,
            has_k2_blocks,
        },
    })
}

/// Complement is a disjoint union of at least two cliques.
pub fn is_complete_multipartite(g: &Graph) -> bool {
    let co = g.complement();
    let comps = co.components_unchecked(&co.vertices());
    comps.len() >= 2 && comps.iter().all(|c| co.is_clique(c))
}

/// Unicyclic: connected with exactly as many edges as vertices.
pub fn is_unicyclic(g: &Graph) -> bool {
    g.order() >= 3 && g.is_connected() && g.size() == g.order()
}

/// Whether `e(G) = n - 1`: `G` is `K_3`, `P_3` or a cycle of order `n - 1`
/// with one pendant vertex.
pub fn is_exchange_n_minus_1(g: &Graph) -> Result<bool> {
    g.require_connected()?;
    let n = g.order();
    if n < 3 {
        return Err(Error::param("the n - 1 characterization needs n >= 3"));
    }
    if n == 3 {
        // The only connected graphs on three vertices are K_3 and P_3.
        return Ok(true);
    }
    Ok(is_unicyclic(g) && g.cycle_vertices().len() == n - 1)
}

/// A formula evaluation with the structure that justified it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaResult {
    pub value: usize,
    pub tag: &'static str,
    /// A set attaining `value`. Chain formulas locate one with a short
    /// bounded search, so this may be absent on large inputs.
    pub certificate: Option<ExchangeCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain: Option<ChainStructure>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub blocks: Vec<BlockReport>,
}

impl FormulaResult {
    fn plain(value: usize, tag: &'static str, certificate: ExchangeCertificate) -> Self {
        Self {
            value,
            tag,
            certificate: Some(certificate),
            chain: None,
            blocks: Vec::new(),
        }
    }
}

/// Search time granted to chain formulas for locating a certificate.
const WITNESS_BUDGET: Duration = Duration::from_secs(2);

/// Evaluates the first applicable closed formula, or `None` when no
/// formula's hypotheses hold.
///
/// Rules, in order: cycles, trees, complete and complete multipartite
/// graphs give 2; a unicyclic graph
/// whose cycle has `m < n` vertices gives `m`; a chordal graph whose blocks
/// form one chain gives `l + 1` or `l + 2` depending on the block
/// properties when it has no `K_2` block, and `l + 2` (with `l` the longest
/// non-`K_2` run) when it has one.
pub fn exchange_formula(g: &Graph) -> Result<Option<FormulaResult>> {
    g.require_connected()?;
    let n = g.order();
    if n == 1 {
        let cert = ExchangeCertificate {
            set: VertexSet::singleton(1, 0),
            pivot: None,
            anti_pivot: None,
        };
        return Ok(Some(FormulaResult::plain(1, "singleton", cert)));
    }
    let two = |tag| Ok(Some(FormulaResult::plain(2, tag, pair_certificate(n))));
    if g.is_cycle() {
        return two("remark-cycle");
    }
    if g.is_tree() {
        return two("remark-tree");
    }
    if g.is_complete() {
        return two("remark-complete");
    }
    if is_complete_multipartite(g) {
        return two("remark-multipartite");
    }
    if is_unicyclic(g) {
        return Ok(Some(unicyclic_result(g)));
    }
    if !g.is_chordal().chordal {
        return Ok(None);
    }
    let chain = chain_structure(g)?;
    if !chain.is_single_chain {
        return Ok(None);
    }
    let blocks = block_reports(g)?;
    let l = chain.longest_non_k2_chain_length;
    let (value, tag) = if chain.has_k2_blocks {
        (l + 2, "chain-with-bridges")
    } else {
        let separation = blocks.iter().any(|b| b.vertex_separation.is_some());
        let end_edge_vertex = blocks
            .iter()
            .any(|b| b.is_end_block && b.edge_vertex.is_some());
        let any_edge_vertex = blocks.iter().any(|b| b.edge_vertex.is_some());
        if separation || end_edge_vertex {
            (l + 2, "chain-property")
        } else if any_edge_vertex {
            return Ok(None);
        } else {
            (l + 1, "chain-plain")
        }
    };
    let certificate = witness_of_size(g, value);
    Ok(Some(FormulaResult {
        value,
        tag,
        certificate,
        chain: Some(chain),
        blocks,
    }))
}

/// The cycle minus one vertex, plus one vertex off the cycle.
fn unicyclic_result(g: &Graph) -> FormulaResult {
    let cyc = g.cycle_vertices();
    let off = cyc.complement().first().expect("unicyclic graph has an off-cycle vertex");
    let dropped = cyc.first().expect("nonempty cycle");
    let set = cyc.without(dropped).with(off);
    let cert = is_e_independent(g, &set)
        .expect("set within range")
        .expect("cycle minus a vertex plus a pendant is exchange-independent");
    FormulaResult::plain(cyc.len(), "unicyclic", cert)
}

fn witness_of_size(g: &Graph, k: usize) -> Option<ExchangeCertificate> {
    if k <= 2 {
        return Some(pair_certificate(g.order()));
    }
    let budget = SearchBudget {
        max_rounds: u64::MAX,
        max_time: Some(WITNESS_BUDGET),
    };
    match exchange_set_at_least(g, k, budget).ok()? {
        SearchOutcome::Found { certificate, .. } if certificate.set.len() == k => Some(certificate),
        _ => None,
    }
}

/// What the product formulas can say about a product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProductExchange {
    Exact { value: usize, tag: &'static str },
    LowerBound { value: usize, tag: &'static str },
    NotApplicable { reason: &'static str },
}

impl ProductExchange {
    pub fn value(&self) -> Option<usize> {
        match self {
            ProductExchange::Exact { value, .. } | ProductExchange::LowerBound { value, .. } => {
                Some(*value)
            }
            ProductExchange::NotApplicable { .. } => None,
        }
    }
}

fn is_path(g: &Graph) -> bool {
    g.is_tree() && (0..g.order()).all(|v| g.degree(v) <= 2)
}

/// Best known value of `e(G)` for a factor: a formula, else the exact
/// solver within its cap, else the pair bound. The flag says whether the
/// value is exact.
fn factor_exchange(g: &Graph) -> Result<(usize, bool)> {
    if let Some(r) = exchange_formula(g)? {
        return Ok((r.value, true));
    }
    if g.order() <= DEFAULT_EXACT_CAP {
        return Ok((exchange_number_exact(g)?.value, true));
    }
    Ok((2, false))
}

pub fn product_exchange(g: &Graph, h: &Graph, kind: ProductKind) -> Result<ProductExchange> {
    g.require_connected()?;
    h.require_connected()?;
    if g.order() < 2 || h.order() < 2 {
        return Err(Error::param("product formulas need two nontrivial factors"));
    }
    Ok(match kind {
        ProductKind::Cartesian => cartesian(g, h)?,
        ProductKind::Strong => {
            if g.diameter()?.max(h.diameter()?) > 2 {
                ProductExchange::Exact { value: 3, tag: "strong-diameter" }
            } else {
                ProductExchange::NotApplicable {
                    reason: "both factors have diameter at most two",
                }
            }
        }
        ProductKind::Lexicographic => {
            if g.diameter()? >= 2 || graph_edge_vertex(h).is_some() {
                ProductExchange::Exact { value: 3, tag: "lexicographic" }
            } else {
                ProductExchange::Exact { value: 2, tag: "lexicographic" }
            }
        }
    })
}

fn cartesian(g: &Graph, h: &Graph) -> Result<ProductExchange> {
    let (ng, nh) = (g.order(), h.order());
    // K_2 □ K_2 is C_4.
    if ng == 2 && nh == 2 {
        return Ok(ProductExchange::Exact { value: 2, tag: "remark-cycle" });
    }
    if g.is_complete() && h.is_complete() && ng >= 3 && nh >= 3 {
        return Ok(ProductExchange::Exact { value: 3, tag: "complete-by-complete" });
    }
    for (k, p) in [(g, h), (h, g)] {
        if k.is_complete() && is_path(p) {
            return Ok(ProductExchange::Exact {
                value: p.order() + 1,
                tag: "complete-by-path",
            });
        }
    }
    let (eg, _) = factor_exchange(g)?;
    let (eh, _) = factor_exchange(h)?;
    let general = (eg - 1) * (eh - 1) + 1;
    if is_path(g) && is_path(h) && ng + nh - 1 > general {
        return Ok(ProductExchange::LowerBound {
            value: ng + nh - 1,
            tag: "path-by-path",
        });
    }
    Ok(ProductExchange::LowerBound {
        value: general,
        tag: "cartesian-bound",
    })
}
