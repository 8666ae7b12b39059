mod common;

use common::*;
use cyclecvx::graph::generate::{complete, cycle, path};
use cyclecvx::graph::is_perfect_elimination_ordering;
use cyclecvx::{hull, interval, is_convex, Graph, ProductKind, VertexSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn catalog_sizes_match_known_counts() {
    let counts: Vec<usize> = (1..=6).map(|n| connected_catalog(n).len()).collect();
    assert_eq!(counts, [1, 1, 2, 6, 21, 112]);
}

#[test]
fn interval_matches_cycle_definition() {
    for g in catalog_up_to(6) {
        for s in subsets(g.order()) {
            assert_eq!(interval(&g, &s).unwrap(), brute_interval(&g, &s), "{g:?} {s:?}");
        }
    }
}

#[test]
fn hull_is_least_convex_superset() {
    for g in catalog_up_to(6) {
        let n = g.order();
        let convex: Vec<VertexSet> = subsets(n).filter(|c| brute_interval(&g, c) == *c).collect();
        for s in subsets(n) {
            let h = hull(&g, &s).unwrap().final_set;
            assert!(is_convex(&g, &h).unwrap());
            for c in convex.iter().filter(|c| s.is_subset(c)) {
                assert!(h.is_subset(c), "{g:?} {s:?}");
            }
        }
    }
}

#[test]
fn chordality_matches_brute_force() {
    let mut graphs = catalog_up_to(6);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    graphs.extend((0..600).map(|i| random_connected(7, 0.15 + 0.1 * (i % 6) as f64, &mut rng)));
    for g in graphs {
        let v = g.is_chordal();
        assert_eq!(v.chordal, brute_chordal(&g), "{g:?}");
        if let Some(order) = v.elimination_order {
            assert!(is_perfect_elimination_ordering(&g, &order));
        }
    }
}

#[test]
fn block_decomposition_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..400 {
        let n = 1 + i % 10;
        let g = random_connected(n, 0.05 + 0.05 * (i % 5) as f64, &mut rng);
        let dec = g.block_decomposition().unwrap();
        // Cut vertices: deletion disconnects.
        for v in 0..n {
            let cut = n > 1 && !connected_without(&g, &VertexSet::singleton(n, v));
            assert_eq!(dec.cut_vertices.contains(v), cut, "{g:?} v={v}");
            assert_eq!(dec.blocks_containing(v).len() >= 2, cut);
        }
        // Each edge lies in exactly one block.
        for (u, v) in g.edges() {
            let k = dec.blocks.iter().filter(|b| b.contains(u) && b.contains(v)).count();
            assert_eq!(k, 1);
        }
        for b in &dec.blocks {
            // 2-connected (or K_2 / K_1), and maximal.
            if b.len() > 2 {
                assert!(g.induces_connected(b));
                for v in b.iter() {
                    assert!(g.induces_connected(&b.without(v)));
                }
            }
            for w in b.complement().iter() {
                let bigger = b.with(w);
                let two_connected = g.induces_connected(&bigger)
                    && bigger.iter().all(|v| g.induces_connected(&bigger.without(v)));
                assert!(!two_connected, "block {b:?} extends by {w}");
            }
        }
        // Block-cut tree: nodes = blocks + cut vertices, edges = nodes - 1.
        assert_eq!(
            dec.tree_edges.len() + 1,
            dec.blocks.len() + dec.cut_vertices.len()
        );
    }
}

fn naive_product_edges(g: &Graph, h: &Graph, kind: ProductKind) -> usize {
    let (ng, nh) = (g.order(), h.order());
    let mut count = 0;
    for a in 0..ng * nh {
        for b in a + 1..ng * nh {
            let (g1, h1, g2, h2) = (a / nh, a % nh, b / nh, b % nh);
            let gg = g.has_edge(g1, g2);
            let hh = h.has_edge(h1, h2);
            let adj = match kind {
                ProductKind::Cartesian => (gg && h1 == h2) || (g1 == g2 && hh),
                ProductKind::Strong => (gg || g1 == g2) && (hh || h1 == h2),
                ProductKind::Lexicographic => gg || (g1 == g2 && hh),
            };
            count += usize::from(adj);
        }
    }
    count
}

#[test]
fn product_edge_counts() {
    let factors = catalog_up_to(5);
    for g in &factors {
        for h in &factors {
            let (ng, nh, eg, eh) = (g.order(), h.order(), g.size(), h.size());
            let cart = eg * nh + eh * ng;
            let p = g.product(h, ProductKind::Cartesian).unwrap();
            assert_eq!(p.graph.order(), ng * nh);
            assert_eq!(p.graph.size(), cart);
            let s = g.product(h, ProductKind::Strong).unwrap();
            assert_eq!(s.graph.size(), cart + 2 * eg * eh);
            for kind in ProductKind::ALL {
                let p = g.product(h, kind).unwrap();
                assert_eq!(p.graph.size(), naive_product_edges(g, h, kind));
                for v in 0..p.graph.order() {
                    let (a, b) = p.coords(v);
                    assert_eq!(p.id(a, b), v);
                }
            }
        }
    }
}

#[test]
fn small_product_identities() {
    let k2 = complete(2);
    let c4 = k2.product(&k2, ProductKind::Cartesian).unwrap().graph;
    assert!(c4.is_cycle() && c4.order() == 4);
    let k4 = complete(4);
    assert_eq!(k2.product(&k2, ProductKind::Strong).unwrap().graph, k4);
    assert_eq!(k2.product(&k2, ProductKind::Lexicographic).unwrap().graph, k4);
    assert_eq!(path(4).diameter().unwrap(), 3);
    assert_eq!(cycle(6).diameter().unwrap(), 3);
}
