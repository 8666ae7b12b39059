//! Graph catalogs and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use cyclecvx::{Graph, VertexSet};
use rand::Rng;

fn pair_index(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

fn connected_mask(n: usize, pairs: &[(usize, usize)], mask: u32) -> bool {
    let mut seen = 1u32;
    let mut stack = vec![0];
    while let Some(u) = stack.pop() {
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let w = if a == u { b } else if b == u { a } else { continue };
                if seen >> w & 1 == 0 {
                    seen |= 1 << w;
                    stack.push(w);
                }
            }
        }
    }
    seen == (1u32 << n) - 1
}

/// Every connected graph on `n <= 6` vertices, one per isomorphism class.
pub fn connected_catalog(n: usize) -> Vec<Graph> {
    assert!((1..=6).contains(&n));
    let pairs = pair_index(n);
    let perms = permutations(n);
    // Position of each (u, v) pair in the mask.
    let mut at = vec![vec![0usize; n]; n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        at[u][v] = i;
        at[v][u] = i;
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        if !connected_mask(n, &pairs, mask) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(0u32, |acc, (_, &(u, v))| acc | 1 << at[p[u]][p[v]])
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            out.push(Graph::from_edges(n, edges).unwrap());
        }
    }
    out
}

/// Connected catalogs for orders `1..=max`.
pub fn catalog_up_to(max: usize) -> Vec<Graph> {
    (1..=max).flat_map(connected_catalog).collect()
}

/// A random connected graph: a random spanning tree plus each other pair
/// with probability `p`.
pub fn random_connected(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for (u, v) in pair_index(n) {
        if rng.gen_bool(p) {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    (0u64..1 << n).map(move |m| VertexSet::from_mask(n, m))
}

/// Whether some simple cycle of `G[within]` passes through `v`, by
/// depth-first search over simple paths.
pub fn cycle_through(g: &Graph, within: &VertexSet, v: usize) -> bool {
    fn dfs(g: &Graph, within: &VertexSet, start: usize, u: usize, len: usize, used: &mut VertexSet) -> bool {
        for w in g.adj(u).iter().filter(|&w| within.contains(w)) {
            if w == start && len >= 3 {
                return true;
            }
            if w != start && !used.contains(w) {
                used.insert(w);
                if dfs(g, within, start, w, len + 1, used) {
                    return true;
                }
                used.remove(w);
            }
        }
        false
    }
    let mut used = VertexSet::singleton(g.order(), v);
    dfs(g, within, v, v, 1, &mut used)
}

/// Interval from the literal definition: outside vertices lying on a
/// cycle of `G[S ∪ {v}]`.
pub fn brute_interval(g: &Graph, s: &VertexSet) -> VertexSet {
    let mut out = s.clone();
    for v in s.complement().iter() {
        if cycle_through(g, &s.with(v), v) {
            out.insert(v);
        }
    }
    out
}

/// Chordal iff no vertex subset of size at least four induces a cycle.
pub fn brute_chordal(g: &Graph) -> bool {
    subsets(g.order()).all(|s| s.len() < 4 || !induces_cycle(g, &s))
}

pub fn induces_cycle(g: &Graph, s: &VertexSet) -> bool {
    s.len() >= 3
        && s.iter().all(|v| g.adj(v).intersection_len(s) == 2)
        && g.induces_connected(s)
}

/// Connectivity of `G - removed`.
pub fn connected_without(g: &Graph, removed: &VertexSet) -> bool {
    let rest = removed.complement();
    rest.is_empty() || g.induces_connected(&rest)
}

/// All valid pivots of `s`, each with its lowest anti-pivot.
pub fn all_pivots(g: &Graph, s: &VertexSet) -> Vec<(usize, usize)> {
    let hulls: Vec<(usize, VertexSet)> = s
        .iter()
        .map(|a| (a, cyclecvx::hull(g, &s.without(a)).unwrap().final_set))
        .collect();
    let mut out = Vec::new();
    for (p, hp) in &hulls {
        let mut cand = hp.clone();
        for (a, ha) in &hulls {
            if a != p {
                cand.difference_with(ha);
            }
        }
        if let Some(x) = cand.first() {
            out.push((*p, x));
        }
    }
    out
}

/// Checks every hull and independence property that applies to `(g, s)`;
/// returns the first violated one. The second value says whether `s` was
/// exchange-independent with at least three vertices.
pub fn check_lemmas(g: &Graph, s: &VertexSet) -> Result<bool, String> {
    use cyclecvx::{is_c_independent, is_e_independent, is_hull_set, redundant_vertices};
    let n = g.order();
    let h = hull(g, s).final_set;
    if !s.is_subset(&h) {
        return Err("extensivity".into());
    }
    if hull(g, &h).final_set != h {
        return Err("idempotence".into());
    }
    for v in s.complement().iter() {
        if !h.is_subset(&hull(g, &s.with(v)).final_set) {
            return Err("monotonicity".into());
        }
    }
    // Seeds per hull component.
    for comp in g.connected_components(&h).unwrap() {
        let seeds = comp.intersection_len(s);
        let ok = if comp.len() == 1 { seeds == 1 } else { seeds >= 2 };
        if !ok {
            return Err(format!("component {comp:?} holds {seeds} seeds"));
        }
    }
    if s.is_empty() {
        return Ok(false);
    }
    let edgeless = s.iter().all(|v| g.adj(v).is_disjoint(s));
    let cert = is_e_independent(g, s).unwrap();
    if s.len() >= 3 && edgeless && cert.is_some() {
        return Err("independent set of size >= 3 is E-independent".into());
    }
    let Some(cert) = cert else { return Ok(false) };
    if !cert.validate(g) {
        return Err("certificate fails revalidation".into());
    }
    if s.len() < 3 {
        return Ok(false);
    }
    let pivots = all_pivots(g, s);
    let redundant = redundant_vertices(g, s).unwrap();
    if redundant.len() > 1 {
        return Err("more than one redundant vertex".into());
    }
    if let Some(r) = redundant.first() {
        if pivots.len() != 1 || pivots[0].0 != r {
            return Err("redundant vertex is not the only pivot".into());
        }
    }
    for &(p, _) in &pivots {
        let rest = s.without(p);
        if is_c_independent(g, &rest).unwrap().is_none() {
            return Err("S minus pivot is C-dependent".into());
        }
        if !g.induces_connected(&hull(g, &rest).final_set) {
            return Err("hull of S minus pivot is disconnected".into());
        }
    }
    // Structure of E-independent sets of size >= 3.
    if edgeless {
        return Err("no edge inside S".into());
    }
    for sub in subsets(n).filter(|t| t.is_subset(s)) {
        if induces_cycle(g, &sub) {
            return Err("S contains an induced cycle".into());
        }
    }
    let on_cycle = g.cycle_vertices();
    if s.difference(&on_cycle).len() > 1 {
        return Err("two vertices of S lie on no cycle".into());
    }
    let comps = g.connected_components(&h).unwrap();
    let ok = comps.len() == 1
        || (comps.len() == 2 && comps.iter().filter(|c| c.len() == 1).count() == 1);
    if !ok {
        return Err(format!("hull components {comps:?}"));
    }
    for u in s.iter() {
        for v in s.iter().filter(|&v| v > u) {
            if is_hull_set(g, &s.without(u).without(v)).unwrap() {
                return Err(format!("S minus {{{u},{v}}} is a hull set"));
            }
        }
    }
    Ok(true)
}

fn hull(g: &Graph, s: &VertexSet) -> cyclecvx::HullTrace {
    cyclecvx::hull(g, s).unwrap()
}
