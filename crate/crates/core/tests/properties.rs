use std::collections::BTreeSet;

use proptest::prelude::*;

use ktree_thickness::book::{book_crosses, embed_2tree_forests, embed_star_forests, BookEmbedding};
use ktree_thickness::geom::{
    draw_forests, draw_planar_2tree, general_position_violation, perturbation_radius, Drawing, Pt,
};
use ktree_thickness::graph::{
    ktree_certify, ktree_edge_count, ktree_lift, lemma_partition, random_ktree, Edge, Graph,
    KTreeBuild, PartitionCase,
};
use ktree_thickness::oracle::exact_arboricity;
use ktree_thickness::verify::{check_book, check_colourful, check_drawing_layers, nash_williams, LayerMode};
use num_rational::BigRational;

fn build(max_k: usize, max_n: usize) -> impl Strategy<Value = KTreeBuild> {
    (1..=max_k, 0..max_n, any::<u64>())
        .prop_map(|(k, extra, seed)| random_ktree(k, k + 1 + extra, seed).expect("valid parameters"))
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (2usize..=7).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut it = bits.into_iter();
            for a in 0..n {
                for b in a + 1..n {
                    if it.next().expect("one bit per pair") {
                        g.add_edge(a, b);
                    }
                }
            }
            g
        })
    })
}

fn pages_partition_edges(emb: &BookEmbedding, g: &Graph) -> bool {
    let edges: BTreeSet<Edge> = g.edges().into_iter().collect();
    let paged: BTreeSet<Edge> = emb.pages.keys().copied().collect();
    edges == paged && emb.pages.values().all(|&p| (1..=emb.page_count).contains(&p))
}

fn no_page_crossings(emb: &BookEmbedding) -> bool {
    let edges: Vec<(Edge, usize)> = emb.pages.iter().map(|(&e, &p)| (e, p)).collect();
    edges.iter().enumerate().all(|(i, &(e, p))| {
        edges[i + 1..]
            .iter()
            .all(|&(f, q)| p != q || !book_crosses(&emb.order, e, f))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_builds_certify_and_count_edges(b in build(6, 40)) {
        let g = b.realize();
        prop_assert_eq!(g.edge_count(), ktree_edge_count(b.k, g.vertex_count()));
        prop_assert_eq!(g.edge_count(), b.k * g.vertex_count() - b.k * (b.k + 1) / 2);
        let cert = ktree_certify(&g, b.k).expect("a generated k-tree certifies");
        prop_assert_eq!(cert.realize(), g);
    }

    #[test]
    fn random_ktree_is_reproducible(k in 1usize..6, extra in 0usize..30, seed in any::<u64>()) {
        let a = random_ktree(k, k + 1 + extra, seed).expect("valid");
        let b = random_ktree(k, k + 1 + extra, seed).expect("valid");
        prop_assert_eq!(a, b);
    }

    #[test]
    fn lift_contains_input_and_certifies_one_higher(b in build(5, 25)) {
        let lifted = ktree_lift(&b).expect("lift");
        prop_assert_eq!(lifted.k, b.k + 1);
        let big = lifted.validate().expect("lifted build is valid");
        let small = b.realize();
        for e in small.edges() {
            prop_assert!(big.has_edge(e.lo(), e.hi()));
        }
        prop_assert!(ktree_certify(&big, b.k + 1).is_ok());
    }

    #[test]
    fn partition_satisfies_its_invariants(b in build(5, 30)) {
        let g = b.realize();
        let k = b.k;
        let case = lemma_partition(&b).expect("partition");
        let s = case.s();
        prop_assert!(!s.is_empty());
        for &w in s {
            prop_assert!(g.is_simplicial(w, k));
            prop_assert!(g.neighbours(w).is_disjoint(s));
        }
        let rest: Vec<usize> = (0..g.vertex_count()).filter(|v| !s.contains(v)).collect();
        match &case {
            PartitionCase::CaseA { .. } => {
                prop_assert_eq!(rest.len(), k);
                prop_assert!(g.is_clique(&rest));
            }
            PartitionCase::CaseB { pivot, .. } => {
                let nb: Vec<usize> = g.neighbours(*pivot).iter().copied().filter(|u| !s.contains(u)).collect();
                prop_assert_eq!(nb.len(), k);
                prop_assert!(g.is_clique(&nb));
                let mut closed: BTreeSet<usize> = nb.iter().copied().collect();
                closed.insert(*pivot);
                for &w in s {
                    let hits = nb
                        .iter()
                        .filter(|&&u| {
                            let mut want = closed.clone();
                            want.remove(&u);
                            *g.neighbours(w) == want
                        })
                        .count();
                    prop_assert_eq!(hits, 1);
                }
            }
        }
    }

    #[test]
    fn star_embedding_invariants(b in build(6, 60)) {
        let g = b.realize();
        let emb = embed_star_forests(&b).expect("embedding");
        prop_assert!(emb.page_count <= b.k + 1);
        prop_assert!(pages_partition_edges(&emb, &g));
        prop_assert!(no_page_crossings(&emb));
        prop_assert!(check_book(&emb, &g, LayerMode::StarForest).expect("verify").passed);
        if g.vertex_count() > b.k + 1 {
            for v in (0..g.vertex_count()).filter(|&v| g.is_simplicial(v, b.k)) {
                prop_assert!(check_colourful(&emb.pages, v), "vertex {} not colourful", v);
            }
        }
    }

    #[test]
    fn two_tree_embedding_invariants(extra in 0usize..80, seed in any::<u64>()) {
        let b = random_ktree(2, 3 + extra, seed).expect("valid");
        let g = b.realize();
        let emb = embed_2tree_forests(&b).expect("embedding");
        prop_assert!(emb.page_count <= 2);
        prop_assert!(pages_partition_edges(&emb, &g));
        prop_assert!(no_page_crossings(&emb));
        prop_assert!(check_book(&emb, &g, LayerMode::Forest).expect("verify").passed);
    }

    #[test]
    fn book_crossing_is_symmetric_and_rotation_invariant(
        order in Just((0..8).collect::<Vec<usize>>()).prop_shuffle(),
        a in 0usize..8, b in 0usize..8, c in 0usize..8, d in 0usize..8, shift in 0usize..8,
    ) {
        prop_assume!(a != b && c != d);
        let (e, f) = (Edge::new(a, b), Edge::new(c, d));
        let x = book_crosses(&order, e, f);
        prop_assert_eq!(x, book_crosses(&order, f, e));
        let mut rotated = order.clone();
        rotated.rotate_left(shift);
        prop_assert_eq!(x, book_crosses(&rotated, e, f));
    }

    #[test]
    fn density_bound_matches_arboricity(g in small_graph()) {
        let nw = nash_williams(&g).expect("small");
        let arb = exact_arboricity(&g).expect("small");
        prop_assert_eq!(nw, arb.value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn forest_drawings_pass_the_verifier(b in build(4, 25)) {
        let d = draw_forests(&b).expect("drawing");
        prop_assert_eq!(d.colour_count, b.k);
        prop_assert!(general_position_violation(&d).is_none());
        let r = check_drawing_layers(&d, &b.realize(), LayerMode::Forest).expect("verify");
        prop_assert!(r.passed, "{:?}", r.violations);
    }

    #[test]
    fn perturbation_within_radius_is_harmless(
        k in 1usize..=2, extra in 0usize..12, seed in any::<u64>(),
        moves in proptest::collection::vec((-99i64..=99, -99i64..=99), 16),
    ) {
        let b = random_ktree(k, k + 1 + extra, seed).expect("valid");
        let d: Drawing = draw_planar_2tree(&b).expect("drawing");
        let eps = perturbation_radius(&d).expect("radius");
        let mut moved = d.clone();
        for (p, (x, y)) in moved.positions.values_mut().zip(moves.iter().cycle()) {
            let s = |t: i64| &eps * BigRational::new(t.into(), 141.into());
            *p = p.add(&Pt::new(s(*x), s(*y)));
        }
        prop_assert!(general_position_violation(&moved).is_none());
        let r = check_drawing_layers(&moved, &d.graph(), LayerMode::Noncrossing).expect("verify");
        prop_assert!(r.passed, "{:?}", r.violations);
    }
}
