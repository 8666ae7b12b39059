//! Exhaustive decision of "is there an exchange-independent set with at
//! least `k` vertices" for graphs too large for subset enumeration.
//!
//! For `|S| >= 3`, `S` is exchange-independent with anti-pivot `x` iff
//! `x ∉ S` and exactly one `a ∈ S` has `x ∈ hull(S ∖ {a})`; that `a` is
//! the pivot. Two families of constraints follow, and both hold for every
//! such `S` with pivot `p`:
//!
//! * if `K` is convex and `x ∉ K`, then `S ∖ {p} ⊄ K`;
//! * if `x ∈ hull(M)` and `M ⊆ S`, then `S ∖ M ⊆ {p}`.
//!
//! For each `x` a SAT solver proposes `(S, p)` with `|S| >= k`; a proposal
//! that fails the hull check yields a violated constraint of one of the
//! two kinds (the convex set grown to a copoint, the generator shrunk to a
//! minimal one), which is added before solving again.

use std::time::{Duration, Instant};

use serde::Serialize;
use varisat::{ExtendFormula, Lit, Solver};

use super::{ExchangeCertificate, Tester};
use crate::convexity::Closure;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::set::VertexSet;

/// Limits for [`exchange_set_at_least`]. Exceeding either yields
/// [`SearchOutcome::Timeout`]; the time limit is checked between solver
/// calls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Maximum number of refinement rounds over all anti-pivots.
    pub max_rounds: u64,
    pub max_time: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_rounds: 10_000_000,
            max_time: Some(Duration::from_secs(900)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found {
        certificate: ExchangeCertificate,
        rounds: u64,
    },
    Absent {
        rounds: u64,
    },
    Timeout {
        rounds: u64,
    },
}

/// Decides whether `g` has an exchange-independent set with at least `k`
/// vertices (`k >= 3`).
pub fn exchange_set_at_least(g: &Graph, k: usize, budget: SearchBudget) -> Result<SearchOutcome> {
    g.require_connected()?;
    if k < 3 {
        return Err(Error::param("sizes below 3 are always attained"));
    }
    let n = g.order();
    if k > n {
        return Ok(SearchOutcome::Absent { rounds: 0 });
    }
    let start = Instant::now();
    let mut rounds = 0u64;
    let mut closure = Closure::new(g);
    for x in 0..n {
        let mut run = AntiPivotRun::new(g, x, k);
        loop {
            let over_time = budget.max_time.is_some_and(|t| start.elapsed() > t);
            if rounds >= budget.max_rounds || over_time {
                return Ok(SearchOutcome::Timeout { rounds });
            }
            rounds += 1;
            let Some((s, p)) = run.propose()? else {
                break;
            };
            if let Some(cyc) = induced_cycle(g, &s) {
                run.forbid(&cyc);
                continue;
            }
            if run.refine(&mut closure, &s, p) {
                let cert = Tester::new(g)
                    .certificate(&s, false)
                    .expect("refinement accepted an exchange-independent set");
                return Ok(SearchOutcome::Found { certificate: cert, rounds });
            }
        }
    }
    Ok(SearchOutcome::Absent { rounds })
}

struct AntiPivotRun<'s> {
    solver: Solver<'s>,
    n: usize,
    x: usize,
    /// `s[v]`: v ∈ S; `q[v]`: v is the pivot; `t[v]` = s ∧ ¬q.
    s: Vec<Lit>,
    q: Vec<Lit>,
    t: Vec<Lit>,
}

impl AntiPivotRun<'_> {
    fn new(g: &Graph, x: usize, k: usize) -> Self {
        let n = g.order();
        let mut solver = Solver::new();
        let s: Vec<Lit> = (0..n).map(|_| solver.new_lit()).collect();
        let q: Vec<Lit> = (0..n).map(|_| solver.new_lit()).collect();
        let t: Vec<Lit> = (0..n).map(|_| solver.new_lit()).collect();
        solver.add_clause(&[!s[x]]);
        for v in 0..n {
            solver.add_clause(&[!q[v], s[v]]);
            solver.add_clause(&[!t[v], s[v]]);
            solver.add_clause(&[!t[v], !q[v]]);
            solver.add_clause(&[t[v], !s[v], q[v]]);
        }
        solver.add_clause(&q);
        for u in 0..n {
            for v in u + 1..n {
                solver.add_clause(&[!q[u], !q[v]]);
            }
        }
        add_at_least(&mut solver, &s, k);
        for (a, b, c) in triangles(g) {
            solver.add_clause(&[!s[a], !s[b], !s[c]]);
        }
        Self {
            solver,
            n,
            x,
            s,
            q,
            t,
        }
    }

    fn propose(&mut self) -> Result<Option<(VertexSet, usize)>> {
        let sat = self
            .solver
            .solve()
            .map_err(|e| Error::param(format!("SAT solver failure: {e}")))?;
        if !sat {
            return Ok(None);
        }
        let model = self.solver.model().expect("model after a satisfiable call");
        let mut values = vec![false; model.len()];
        for l in &model {
            values[l.var().index()] = l.is_positive();
        }
        let truth = |l: Lit| values[l.var().index()] == l.is_positive();
        let s = VertexSet::from_ids(self.n, (0..self.n).filter(|&v| truth(self.s[v])));
        let p = (0..self.n)
            .find(|&v| truth(self.q[v]))
            .expect("exactly one pivot");
        Ok(Some((s, p)))
    }

    fn forbid(&mut self, vs: &[usize]) {
        let clause: Vec<Lit> = vs.iter().map(|&v| !self.s[v]).collect();
        self.solver.add_clause(&clause);
    }

    /// Checks the proposal; returns `true` if it is exchange-independent
    /// with pivot `p` and anti-pivot `x`, otherwise adds violated cuts.
    fn refine(&mut self, c: &mut Closure, s: &VertexSet, p: usize) -> bool {
        let x = self.x;
        let mut ok = true;
        let core = s.without(p);
        if !c.hull_contains(&core, x) {
            let base = c.hull(&core);
            let k = grow_to_copoint(c, base, x);
            let clause: Vec<Lit> = (0..self.n)
                .filter(|&v| v != x && !k.contains(v))
                .map(|v| self.t[v])
                .collect();
            self.solver.add_clause(&clause);
            ok = false;
        }
        for a in s.iter().filter(|&a| a != p) {
            let rest = s.without(a);
            if c.hull_contains(&rest, x) {
                let m = shrink_to_minimal(c, rest, x);
                for u in (0..self.n).filter(|&u| u != x && !m.contains(u)) {
                    let mut clause: Vec<Lit> = m.iter().map(|v| !self.s[v]).collect();
                    clause.push(!self.s[u]);
                    clause.push(self.q[u]);
                    self.solver.add_clause(&clause);
                }
                ok = false;
            }
        }
        ok
    }
}

fn triangles(g: &Graph) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (a, b) in g.edges() {
        for c in g.adj(a).intersection(g.adj(b)).iter().filter(|&c| c > b) {
            out.push((a, b, c));
        }
    }
    out
}

/// A shortest cycle of `G[s]` (hence chordless), if `G[s]` is not a forest.
pub(crate) fn induced_cycle(g: &Graph, s: &VertexSet) -> Option<Vec<usize>> {
    let n = g.order();
    let mut best: Option<Vec<usize>> = None;
    for root in s.iter() {
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![usize::MAX; n];
        depth[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for v in g.adj(u).iter().filter(|&v| s.contains(v)) {
                if depth[v] == usize::MAX {
                    depth[v] = depth[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v && parent[v] != u {
                    let walk = |mut a: usize| {
                        let mut p = vec![a];
                        while a != root {
                            a = parent[a];
                            p.push(a);
                        }
                        p
                    };
                    let (pu, pv) = (walk(u), walk(v));
                    let shared = pu.iter().filter(|a| pv.contains(a)).count();
                    if shared == 1 {
                        let mut cyc = pu;
                        cyc.pop();
                        cyc.extend(pv.into_iter().rev());
                        if best.as_ref().is_none_or(|b| cyc.len() < b.len()) {
                            best = Some(cyc);
                        }
                    }
                }
            }
        }
    }
    best
}

/// Sequential-counter encoding of "at least `k` of `xs` are true".
fn add_at_least(solver: &mut Solver<'_>, xs: &[Lit], k: usize) {
    // r[j] after processing i inputs: at least j+1 of them are true.
    let mut prev: Vec<Option<Lit>> = vec![None; k];
    for &xi in xs {
        let cur: Vec<Lit> = (0..k).map(|_| solver.new_lit()).collect();
        for j in 0..k {
            // cur[j] -> prev[j] ∨ (xi ∧ prev[j-1])
            let below = if j == 0 { None } else { Some(prev[j - 1]) };
            let mut c1 = vec![!cur[j], xi];
            if let Some(pj) = prev[j] {
                c1.push(pj);
            }
            solver.add_clause(&c1);
            match below {
                None => {}
                Some(None) => {
                    let mut c2 = vec![!cur[j]];
                    if let Some(pj) = prev[j] {
                        c2.push(pj);
                    }
                    solver.add_clause(&c2);
                }
                Some(Some(pb)) => {
                    let mut c2 = vec![!cur[j], pb];
                    if let Some(pj) = prev[j] {
                        c2.push(pj);
                    }
                    solver.add_clause(&c2);
                }
            }
        }
        prev = cur.into_iter().map(Some).collect();
    }
    match prev[k - 1] {
        Some(last) => solver.add_clause(&[last]),
        None => solver.add_clause(&[]),
    }
}

/// Extends the convex set `k` (which avoids `x`) to a copoint of `x`.
pub(crate) fn grow_to_copoint(c: &mut Closure, mut k: VertexSet, x: usize) -> VertexSet {
    for v in 0..c.order() {
        if v == x || k.contains(v) {
            continue;
        }
        let grown = c.hull(&k.with(v));
        if !grown.contains(x) {
            k = grown;
        }
    }
    k
}

/// Drops members of `m` while `x` stays in the hull.
pub(crate) fn shrink_to_minimal(c: &mut Closure, mut m: VertexSet, x: usize) -> VertexSet {
    for v in m.to_vec() {
        let smaller = m.without(v);
        if c.hull_contains(&smaller, x) {
            m = smaller;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{bowtie, complete, cycle, cycle_with_pendant, path};
    use crate::independence::exchange_number_exact;

    #[test]
    fn copoint_growth_is_maximal() {
        let g = bowtie();
        let mut c = Closure::new(&g);
        for x in 0..5 {
            let k = grow_to_copoint(&mut c, VertexSet::empty(5), x);
            assert!(!k.contains(x));
            assert_eq!(c.hull(&k), k);
            for v in k.complement().iter().filter(|&v| v != x) {
                assert!(c.hull_contains(&k.with(v), x));
            }
        }
    }

    #[test]
    fn minimal_generators_are_minimal() {
        let g = cycle(6);
        let mut c = Closure::new(&g);
        let m = shrink_to_minimal(&mut c, VertexSet::from_ids(6, 1..6), 0);
        assert_eq!(m.len(), 5);
        let g = complete(5);
        let mut c = Closure::new(&g);
        let m = shrink_to_minimal(&mut c, VertexSet::from_ids(5, 1..5), 0);
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn agrees_with_exact_on_small_graphs() {
        for g in [
            cycle(6),
            complete(4),
            path(5),
            bowtie(),
            cycle_with_pendant(6).unwrap(),
        ] {
            let e = exchange_number_exact(&g).unwrap().value;
            for k in 3..=g.order() {
                match exchange_set_at_least(&g, k, SearchBudget::default()).unwrap() {
                    SearchOutcome::Found { certificate, .. } => {
                        assert!(k <= e, "{g:?} k={k}");
                        assert!(certificate.set.len() >= k);
                        assert!(certificate.validate(&g));
                    }
                    SearchOutcome::Absent { .. } => assert!(k > e, "{g:?} k={k}"),
                    SearchOutcome::Timeout { .. } => panic!("tiny search timed out"),
                }
            }
        }
    }

    #[test]
    fn zero_budget_times_out() {
        let budget = SearchBudget {
            max_rounds: 0,
            max_time: None,
        };
        assert!(matches!(
            exchange_set_at_least(&cycle(5), 3, budget).unwrap(),
            SearchOutcome::Timeout { .. }
        ));
    }
}
