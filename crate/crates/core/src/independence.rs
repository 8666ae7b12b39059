//! Carathéodory and exchange independence, and exact exchange numbers.

use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::convexity::Closure;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::set::VertexSet;

mod at_least;

pub use at_least::{exchange_set_at_least, SearchBudget, SearchOutcome};

/// Default vertex cap for [`exchange_number_exact`].
pub const DEFAULT_EXACT_CAP: usize = 20;
/// Default vertex cap for [`exchange_number_brute`].
pub const DEFAULT_BRUTE_CAP: usize = 12;

/// An exchange-independent set with a pivot and anti-pivot. Both are
/// `None` exactly for singletons.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExchangeCertificate {
    pub set: VertexSet,
    pub pivot: Option<usize>,
    pub anti_pivot: Option<usize>,
}

impl ExchangeCertificate {
    /// Recomputes every hull involved and checks the defining condition.
    pub fn validate(&self, g: &Graph) -> bool {
        if self.set.universe() != g.order() || self.set.is_empty() {
            return false;
        }
        let (p, x) = match (self.pivot, self.anti_pivot) {
            (None, None) => return self.set.len() == 1,
            (Some(p), Some(x)) => (p, x),
            _ => return false,
        };
        if !self.set.contains(p) || x >= g.order() {
            return false;
        }
        let mut c = Closure::new(g);
        c.hull_contains(&self.set.without(p), x)
            && self
                .set
                .iter()
                .filter(|&a| a != p)
                .all(|a| !c.hull_contains(&self.set.without(a), x))
    }
}

/// How an exchange number was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    Brute,
    /// A closed formula, identified by tag.
    Formula(&'static str),
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Exact => f.write_str("exact"),
            Method::Brute => f.write_str("brute"),
            Method::Formula(tag) => f.write_str(tag),
        }
    }
}

impl Serialize for Method {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExchangeResult {
    pub value: usize,
    pub certificate: ExchangeCertificate,
    pub method: Method,
}

/// Deletion hulls of one set plus the closure engine that made them.
pub(crate) struct Tester {
    closure: Closure,
    hulls: Vec<VertexSet>,
    members: Vec<usize>,
}

impl Tester {
    pub(crate) fn new(g: &Graph) -> Self {
        Self {
            closure: Closure::new(g),
            hulls: Vec::new(),
            members: Vec::new(),
        }
    }

    pub(crate) fn closure(&mut self) -> &mut Closure {
        &mut self.closure
    }

    /// Lowest valid pivot with its lowest anti-pivot, for `|s| >= 2`.
    /// With `prune`, sets where two deletion hulls span `V` are rejected
    /// early and only a spanning deletion can act as pivot.
    fn pivot(&mut self, s: &VertexSet, prune: bool) -> Option<(usize, usize)> {
        let n = self.closure.order();
        self.members.clear();
        self.members.extend(s.iter());
        self.hulls.clear();
        let mut spanning = None;
        for i in 0..self.members.len() {
            let h = self.closure.hull(&s.without(self.members[i]));
            if prune && h.len() == n {
                if spanning.is_some() {
                    return None;
                }
                spanning = Some(i);
            }
            self.hulls.push(h);
        }
        let k = self.members.len();
        // suffix[i] = union of hulls[i..]
        let mut suffix = vec![VertexSet::empty(n); k + 1];
        for i in (0..k).rev() {
            suffix[i] = suffix[i + 1].union(&self.hulls[i]);
        }
        let mut prefix = VertexSet::empty(n);
        for i in 0..k {
            let allowed = spanning.is_none_or(|j| j == i);
            if allowed {
                let mut cand = self.hulls[i].difference(&prefix);
                cand.difference_with(&suffix[i + 1]);
                if let Some(x) = cand.first() {
                    return Some((self.members[i], x));
                }
            }
            prefix.union_with(&self.hulls[i]);
        }
        None
    }

    pub(crate) fn certificate(&mut self, s: &VertexSet, prune: bool) -> Option<ExchangeCertificate> {
        if s.len() == 1 {
            return Some(ExchangeCertificate {
                set: s.clone(),
                pivot: None,
                anti_pivot: None,
            });
        }
        self.pivot(s, prune).map(|(p, x)| ExchangeCertificate {
            set: s.clone(),
            pivot: Some(p),
            anti_pivot: Some(x),
        })
    }
}

/// A vertex of `hull(s)` outside every `hull(s ∖ {a})`, lowest id first.
pub fn is_c_independent(g: &Graph, s: &VertexSet) -> Result<Option<usize>> {
    g.check_set(s)?;
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut c = Closure::new(g);
    let mut covered = VertexSet::empty(g.order());
    for a in s.iter() {
        covered.union_with(&c.hull(&s.without(a)));
    }
    Ok(c.hull(s).difference(&covered).first())
}

/// Certificate with the lowest valid pivot and lowest anti-pivot, or `None`
/// when `s` is exchange-dependent.
pub fn is_e_independent(g: &Graph, s: &VertexSet) -> Result<Option<ExchangeCertificate>> {
    g.check_set(s)?;
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(Tester::new(g).certificate(s, false))
}

pub(crate) fn pair_certificate(n: usize) -> ExchangeCertificate {
    ExchangeCertificate {
        set: VertexSet::from_ids(n, [0, 1]),
        pivot: Some(0),
        anti_pivot: Some(1),
    }
}

fn singleton_certificate(n: usize) -> ExchangeCertificate {
    ExchangeCertificate {
        set: VertexSet::singleton(n, 0),
        pivot: None,
        anti_pivot: None,
    }
}

/// Exact exchange number with the default cap of [`DEFAULT_EXACT_CAP`].
pub fn exchange_number_exact(g: &Graph) -> Result<ExchangeResult> {
    exchange_number_exact_capped(g, DEFAULT_EXACT_CAP)
}

/// Descending-size search: for each `k` from `n` down to 3 the `k`-subsets
/// are scanned in lexicographic order and the first exchange-independent
/// one is returned, so the certificate is the lexicographically smallest
/// of maximum size. Sizes 1 and 2 are always attained.
pub fn exchange_number_exact_capped(g: &Graph, cap: usize) -> Result<ExchangeResult> {
    g.require_connected()?;
    let n = g.order();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let search = Search::new(g);
    for k in (3..=n).rev() {
        if let Some(cert) = search.first_of_size(k) {
            return Ok(ExchangeResult {
                value: k,
                certificate: cert,
                method: Method::Exact,
            });
        }
    }
    Ok(ExchangeResult {
        value: n.min(2),
        certificate: if n >= 2 { pair_certificate(n) } else { singleton_certificate(n) },
        method: Method::Exact,
    })
}

/// Lexicographically first exchange-independent set of size exactly `k`
/// (`k >= 3`), using the pruned search.
pub fn first_exchange_set_of_size(g: &Graph, k: usize) -> Result<Option<ExchangeCertificate>> {
    g.require_connected()?;
    if k < 3 {
        return Err(Error::param("sizes below 3 are always attained"));
    }
    Ok(Search::new(g).first_of_size(k))
}

struct Search<'g> {
    g: &'g Graph,
    on_cycle: VertexSet,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph) -> Self {
        Self {
            g,
            on_cycle: g.cycle_vertices(),
        }
    }

    fn first_of_size(&self, k: usize) -> Option<ExchangeCertificate> {
        let n = self.g.order();
        if k > n {
            return None;
        }
        (0..=n - k).into_par_iter().find_map_first(|first| {
            let mut tester = Tester::new(self.g);
            let mut s = VertexSet::singleton(n, first);
            let off = usize::from(!self.on_cycle.contains(first));
            self.extend(&mut s, first + 1, k, off, &mut tester)
        })
    }

    /// Whether adding `v` keeps `G[s]` a forest.
    fn keeps_forest(&self, s: &VertexSet, v: usize) -> bool {
        let nb = self.g.adj(v).intersection(s);
        let mut seen = VertexSet::empty(self.g.order());
        for u in nb.iter() {
            if seen.contains(u) {
                return false;
            }
            seen.union_with(&self.g.component_within(u, s));
        }
        true
    }

    fn extend(
        &self,
        s: &mut VertexSet,
        start: usize,
        k: usize,
        off_cycle: usize,
        tester: &mut Tester,
    ) -> Option<ExchangeCertificate> {
        if s.len() == k {
            return self.leaf(s, tester);
        }
        let n = self.g.order();
        let need = k - s.len();
        for v in start..=n - need {
            let off = off_cycle + usize::from(!self.on_cycle.contains(v));
            if off >= 2 || !self.keeps_forest(s, v) {
                continue;
            }
            s.insert(v);
            let found = self.extend(s, v + 1, k, off, tester);
            s.remove(v);
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn leaf(&self, s: &VertexSet, tester: &mut Tester) -> Option<ExchangeCertificate> {
        if s.iter().all(|v| self.g.adj(v).is_disjoint(s)) {
            return None;
        }
        let h = tester.closure().hull(s);
        let comps = self.g.components_unchecked(&h);
        match comps.len() {
            1 => {}
            2 if comps.iter().any(|c| c.len() == 1) => {}
            _ => return None,
        }
        tester.certificate(s, true)
    }
}

/// Unpruned exchange number over every subset, for cross-checking.
pub fn exchange_number_brute(g: &Graph) -> Result<ExchangeResult> {
    exchange_number_brute_capped(g, DEFAULT_BRUTE_CAP)
}

pub fn exchange_number_brute_capped(g: &Graph, cap: usize) -> Result<ExchangeResult> {
    g.require_connected()?;
    let n = g.order();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let mut tester = Tester::new(g);
    for k in (1..=n).rev() {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            let s = VertexSet::from_ids(n, combo.iter().copied());
            if let Some(cert) = tester.certificate(&s, false) {
                return Ok(ExchangeResult {
                    value: k,
                    certificate: cert,
                    method: Method::Brute,
                });
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    unreachable!("singletons are always exchange-independent")
}

/// Advances `combo` to the next `k`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
