//! Cycle interval, hull closure and convexity predicates.

use serde::Serialize;

use crate::error::Result;
use crate::graph::Graph;
use crate::set::VertexSet;

/// Interval iterates from `S` up to the hull. `rounds[0]` is `S`; every
/// later entry strictly contains its predecessor and the last one equals
/// `final_set`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HullTrace {
    pub rounds: Vec<VertexSet>,
    #[serde(rename = "final")]
    pub final_set: VertexSet,
}

impl HullTrace {
    /// Number of interval applications that added vertices.
    pub fn round_count(&self) -> usize {
        self.rounds.len() - 1
    }

    /// Vertices added in round `k` (round 0 yields the seed set).
    pub fn added(&self, k: usize) -> VertexSet {
        match k {
            0 => self.rounds[0].clone(),
            _ => self.rounds[k].difference(&self.rounds[k - 1]),
        }
    }
}

/// Bitset closure engine. Holds the adjacency as packed words plus scratch
/// buffers so repeated hulls do not allocate.
#[derive(Debug, Clone)]
pub struct Closure {
    n: usize,
    w: usize,
    adj: Vec<u64>,
    comp: Vec<u64>,
    frontier: Vec<u64>,
    next: Vec<u64>,
    ones: Vec<u64>,
    twos: Vec<u64>,
    rest: Vec<u64>,
    add: Vec<u64>,
    cur: Vec<u64>,
}

impl Closure {
    pub fn new(g: &Graph) -> Self {
        let n = g.order();
        let w = n.div_ceil(64).max(1);
        let mut adj = vec![0u64; n * w];
        for v in 0..n {
            for u in g.adj(v).iter() {
                adj[v * w + u / 64] |= 1 << (u % 64);
            }
        }
        let z = vec![0u64; w];
        Self {
            n,
            w,
            adj,
            comp: z.clone(),
            frontier: z.clone(),
            next: z.clone(),
            ones: z.clone(),
            twos: z.clone(),
            rest: z.clone(),
            add: z.clone(),
            cur: z,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// One synchronous interval step on `self.cur`; the newly infected
    /// vertices are left in `self.add`. Returns whether any were found.
    fn step(&mut self) -> bool {
        let w = self.w;
        self.rest.copy_from_slice(&self.cur);
        self.add.fill(0);
        while let Some(root) = first_bit(&self.rest) {
            self.comp.fill(0);
            self.frontier.fill(0);
            self.ones.fill(0);
            self.twos.fill(0);
            self.comp[root / 64] |= 1 << (root % 64);
            self.frontier[root / 64] |= 1 << (root % 64);
            // Flood the component of `root` inside `cur`, tracking which
            // vertices see at least one / at least two of its members.
            loop {
                self.next.fill(0);
                for wi in 0..w {
                    let mut bits = self.frontier[wi];
                    while bits != 0 {
                        let u = wi * 64 + bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        let row = &self.adj[u * w..(u + 1) * w];
                        for (k, &r) in row.iter().enumerate() {
                            self.twos[k] |= self.ones[k] & r;
                            self.ones[k] |= r;
                            self.next[k] |= r;
                        }
                    }
                }
                let mut any = false;
                for k in 0..w {
                    let fresh = self.next[k] & self.cur[k] & !self.comp[k];
                    self.frontier[k] = fresh;
                    self.comp[k] |= fresh;
                    any |= fresh != 0;
                }
                if !any {
                    break;
                }
            }
            for k in 0..w {
                self.rest[k] &= !self.comp[k];
                self.add[k] |= self.twos[k] & !self.cur[k];
            }
        }
        self.add.iter().any(|&x| x != 0)
    }

    fn load(&mut self, s: &VertexSet) {
        assert_eq!(s.universe(), self.n, "vertex set universe mismatch");
        self.cur.fill(0);
        self.cur[..s.words().len()].copy_from_slice(s.words());
    }

    fn current(&self) -> VertexSet {
        VertexSet::from_words(self.n, &self.cur[..self.n.div_ceil(64)])
    }

    pub fn interval(&mut self, s: &VertexSet) -> VertexSet {
        self.load(s);
        self.step();
        for k in 0..self.w {
            self.cur[k] |= self.add[k];
        }
        self.current()
    }

    pub fn hull(&mut self, s: &VertexSet) -> VertexSet {
        self.load(s);
        while self.step() {
            for k in 0..self.w {
                self.cur[k] |= self.add[k];
            }
        }
        self.current()
    }

    /// Hull of `s` followed by a membership test, without building a set.
    pub fn hull_contains(&mut self, s: &VertexSet, v: usize) -> bool {
        self.load(s);
        loop {
            if self.cur[v / 64] >> (v % 64) & 1 == 1 {
                return true;
            }
            if !self.step() {
                return false;
            }
            for k in 0..self.w {
                self.cur[k] |= self.add[k];
            }
        }
    }

    /// Whether the hull of `s` is all of `V`.
    pub fn spans(&mut self, s: &VertexSet) -> bool {
        self.hull(s).len() == self.n
    }

    pub fn trace(&mut self, s: &VertexSet) -> HullTrace {
        self.load(s);
        let mut rounds = vec![s.clone()];
        while self.step() {
            for k in 0..self.w {
                self.cur[k] |= self.add[k];
            }
            rounds.push(self.current());
        }
        let final_set = rounds.last().cloned().expect("seed round");
        HullTrace { rounds, final_set }
    }
}

fn first_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &x)| x != 0)
        .map(|(i, &x)| i * 64 + x.trailing_zeros() as usize)
}

/// `S` plus every outside vertex with two neighbours in one component of
/// `G[S]`.
pub fn interval(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    g.check_set(s)?;
    Ok(Closure::new(g).interval(s))
}

/// Iterates the interval synchronously to its fixed point.
pub fn hull(g: &Graph, s: &VertexSet) -> Result<HullTrace> {
    g.check_set(s)?;
    Ok(Closure::new(g).trace(s))
}

pub fn is_convex(g: &Graph, s: &VertexSet) -> Result<bool> {
    Ok(interval(g, s)? == *s)
}

pub fn is_hull_set(g: &Graph, s: &VertexSet) -> Result<bool> {
    g.check_set(s)?;
    Ok(Closure::new(g).spans(s))
}

/// Members `w` of `s` with `w ∈ hull(s ∖ {w})`.
pub fn redundant_vertices(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    g.check_set(s)?;
    let mut c = Closure::new(g);
    Ok(VertexSet::from_ids(
        g.order(),
        s.iter().filter(|&w| c.hull_contains(&s.without(w), w)),
    ))
}
