mod common;

use common::*;
use cyclecvx::formulas::{edge_vertex_property, exchange_formula, vertex_separation_property};
use cyclecvx::graph::generate::unicyclic;
use cyclecvx::independence::exchange_number_exact;
use cyclecvx::{exchange_number_brute, is_e_independent, Graph, VertexSet};
use proptest::prelude::*;

/// Connected graph on up to `max` vertices: a random tree plus extra edges.
fn connected_graph(max: usize) -> impl Strategy<Value = Graph> {
    (1..=max).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            prop::collection::vec(any::<prop::sample::Index>(), n.saturating_sub(1)),
            prop::collection::vec(prop::bool::weighted(0.25), pairs),
        )
            .prop_map(move |(parents, extra)| {
                let mut edges: Vec<(usize, usize)> =
                    (1..n).map(|v| (parents[v - 1].index(v), v)).collect();
                let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                edges.extend(all.zip(extra).filter(|(_, keep)| *keep).map(|(e, _)| e));
                Graph::from_edges(n, edges).unwrap()
            })
    })
}

fn graph_and_subset(max: usize) -> impl Strategy<Value = (Graph, VertexSet)> {
    connected_graph(max).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), prop::collection::vec(any::<bool>(), n)).prop_map(move |(g, bits)| {
            let s = VertexSet::from_ids(n, (0..n).filter(|&i| bits[i]));
            (g, s)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn hull_and_independence_laws((g, s) in graph_and_subset(10)) {
        if let Err(why) = check_lemmas(&g, &s) {
            prop_assert!(false, "{why}: {g:?} {s:?}");
        }
    }

    #[test]
    fn exact_certificates_satisfy_the_lemmas(g in connected_graph(9)) {
        let r = exchange_number_exact(&g).unwrap();
        prop_assert!(r.certificate.validate(&g));
        prop_assert_eq!(r.certificate.set.len(), r.value);
        if let Err(why) = check_lemmas(&g, &r.certificate.set) {
            prop_assert!(false, "{why}: {g:?}");
        }
    }

    #[test]
    fn exact_matches_brute(g in connected_graph(8)) {
        prop_assert_eq!(exchange_number_exact(&g).unwrap().value, exchange_number_brute(&g).unwrap().value);
    }

    #[test]
    fn formulas_match_solver(g in connected_graph(9)) {
        if let Some(r) = exchange_formula(&g).unwrap() {
            prop_assert_eq!(r.value, exchange_number_exact(&g).unwrap().value, "{} on {:?}", r.tag, g);
            if let Some(c) = r.certificate {
                prop_assert!(c.validate(&g));
                prop_assert_eq!(c.set.len(), r.value);
            }
        }
    }

    #[test]
    fn unicyclic_value_is_cycle_length(m in 3usize..=6, raw in prop::collection::vec(any::<prop::sample::Index>(), 1..=4)) {
        let parents: Vec<usize> = raw.iter().enumerate().map(|(j, ix)| ix.index(m + j)).collect();
        let g = unicyclic(m, &parents).unwrap();
        prop_assert_eq!(exchange_number_exact(&g).unwrap().value, m);
    }
}

fn brute_edge_vertex(g: &Graph, block: &VertexSet) -> bool {
    g.edges()
        .filter(|&(u, v)| block.contains(u) && block.contains(v))
        .any(|(u, v)| {
            let du = g.distances_within(u, block);
            let dv = g.distances_within(v, block);
            block.iter().any(|x| du[x].is_none_or(|d| d >= 2) && dv[x].is_none_or(|d| d >= 2))
        })
}

fn brute_separation(g: &Graph, cuts: &VertexSet, block: &VertexSet) -> bool {
    cuts.iter().filter(|&c| block.contains(c)).any(|c| {
        block.iter().any(|x| {
            g.has_edge(x, c)
                && block.iter().any(|y| {
                    !cuts.contains(y) && !g.has_edge(y, c) && !g.has_edge(y, x) && y != c && y != x
                })
        })
    })
}

#[test]
fn block_properties_match_exhaustive_witness_search() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let mut graphs = catalog_up_to(6);
    graphs.extend((0..300).map(|i| random_connected(7 + i % 2, 0.2, &mut rng)));
    for g in graphs {
        let dec = g.block_decomposition().unwrap();
        for b in &dec.blocks {
            let ev = edge_vertex_property(&g, b).unwrap();
            assert_eq!(ev.is_some(), brute_edge_vertex(&g, b), "{g:?} {b:?}");
            if let Some(w) = ev {
                assert!(g.has_edge(w.u, w.v) && b.contains(w.x));
            }
            let vs = vertex_separation_property(&g, b).unwrap();
            assert_eq!(vs.is_some(), brute_separation(&g, &dec.cut_vertices, b), "{g:?} {b:?}");
            if let Some(w) = vs {
                assert!(g.has_edge(w.x, w.c) && !g.has_edge(w.y, w.x) && !g.has_edge(w.y, w.c));
                assert!(!dec.cut_vertices.contains(w.y));
            }
        }
    }
}

#[test]
fn independent_sets_of_size_three_or_more_are_dependent() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    let mut graphs = catalog_up_to(6);
    graphs.extend((0..200).map(|_| random_connected(7, 0.2, &mut rng)));
    for g in graphs {
        for s in subsets(g.order()) {
            if s.len() >= 3 && s.iter().all(|v| g.adj(v).is_disjoint(&s)) {
                assert!(is_e_independent(&g, &s).unwrap().is_none(), "{g:?} {s:?}");
            }
        }
    }
}

#[test]
fn independent_pairs_are_exchange_independent() {
    for g in catalog_up_to(5) {
        for s in subsets(g.order()).filter(|s| s.len() == 2) {
            let c = is_e_independent(&g, &s).unwrap().expect("pairs are independent");
            assert_eq!(c.pivot, s.first());
        }
    }
}
