mod common;

use common::*;
use leavitt_core::hereditary::{
    breaking_vertices, edges_leaving, enumerate_hereditary_saturated, hereditary_saturated_closure,
    is_hereditary_saturated, pair_join, pair_meet, quotient_graph, set_order, Origin,
};
use leavitt_core::lattice::ideal_lattice;
use leavitt_core::structure::{line_point_classes, line_points};
use leavitt_core::{cycles, AdmissiblePair, Graph, Vertex, VertexSet, DEFAULT_LATTICE_CAP};
use proptest::prelude::*;

/// Every subset, filtered by the two closure conditions read off the
/// definitions (no shared code with the library closure).
fn brute_force_hs(g: &Graph) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let inside = |v: Vertex| mask >> v.0 & 1 == 1;
        let hereditary = g.bundles().iter().all(|b| !inside(b.source) || inside(b.range));
        let saturated = g
            .vertices()
            .all(|v| inside(v) || !g.is_regular(v) || g.bundles().iter().any(|b| b.source == v && !inside(b.range)));
        if hereditary && saturated {
            out.push(g.vertices().filter(|&v| inside(v)).collect());
        }
    }
    out.sort_by(set_order);
    out
}

fn subset_of(g: &Graph) -> impl Strategy<Value = VertexSet> {
    let n = g.vertex_count();
    prop::collection::btree_set(0..n.max(1), 0..=n)
        .prop_map(move |s| s.into_iter().filter(|&i| i < n).map(Vertex).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_is_a_closure_operator(
        (g, x, y) in graph_strategy(10, 16, true).prop_flat_map(|g| (Just(g.clone()), subset_of(&g), subset_of(&g)))
    ) {
        let cx = hereditary_saturated_closure(&g, &x);
        prop_assert!(x.is_subset(&cx));
        prop_assert_eq!(&hereditary_saturated_closure(&g, &cx), &cx);
        prop_assert!(is_hereditary_saturated(&g, &cx));
        let xy: VertexSet = x.union(&y).copied().collect();
        prop_assert!(cx.is_subset(&hereditary_saturated_closure(&g, &xy)));
    }

    #[test]
    fn enumeration_matches_brute_force(g in graph_strategy(9, 14, true)) {
        prop_assert_eq!(enumerate_hereditary_saturated(&g, DEFAULT_LATTICE_CAP).unwrap(), brute_force_hs(&g));
    }

    #[test]
    fn hereditary_saturated_sets_form_a_lattice(g in graph_strategy(8, 12, true)) {
        let sets = enumerate_hereditary_saturated(&g, DEFAULT_LATTICE_CAP).unwrap();
        for a in &sets {
            for b in &sets {
                let meet: VertexSet = a.intersection(b).copied().collect();
                prop_assert!(is_hereditary_saturated(&g, &meet));
                let union: VertexSet = a.union(b).copied().collect();
                let join = hereditary_saturated_closure(&g, &union);
                // The join is the least member above both.
                for c in sets.iter().filter(|c| a.is_subset(c) && b.is_subset(c)) {
                    prop_assert!(join.is_subset(c));
                }
            }
        }
    }

    #[test]
    fn ideal_lattice_is_a_lattice_with_constructive_join_and_meet(g in graph_strategy(6, 9, true)) {
        let l = ideal_lattice(&g, DEFAULT_LATTICE_CAP).unwrap();
        let p = &l.poset;
        prop_assert!(p.is_partial_order());
        prop_assert_eq!(&l.elements[p.bottom().unwrap()], &AdmissiblePair::bottom());
        prop_assert_eq!(&l.elements[p.top().unwrap()], &AdmissiblePair::top(&g));
        for i in 0..l.elements.len() {
            for j in 0..l.elements.len() {
                let (a, b) = (&l.elements[i], &l.elements[j]);
                let join = p.join(i, j).expect("joins exist");
                let meet = p.meet(i, j).expect("meets exist");
                prop_assert_eq!(&pair_join(&g, a, b), &l.elements[join]);
                prop_assert_eq!(&pair_meet(&g, a, b), &l.elements[meet]);
            }
        }
        if cycles::is_acyclic(&g) {
            prop_assert!(p.is_distributive());
        }
    }

    #[test]
    fn quotient_sizes_follow_the_formula(g in graph_strategy(7, 12, true)) {
        for h in enumerate_hereditary_saturated(&g, DEFAULT_LATTICE_CAP).unwrap() {
            let breaking: Vec<Vertex> = breaking_vertices(&g, &h).unwrap().into_iter().collect();
            for mask in 0u32..(1 << breaking.len()) {
                let s: VertexSet = breaking.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
                let unselected = breaking.len() - s.len();
                let pair = AdmissiblePair::new(&g, h.clone(), s.clone()).unwrap();
                let q = quotient_graph(&g, &pair).unwrap();
                prop_assert_eq!(q.graph.vertex_count(), g.vertex_count() - h.len() + unselected);
                let kept = g.bundles().iter().filter(|b| !h.contains(&b.range)).count();
                let primed = g.bundles().iter().filter(|b| breaking.contains(&b.range) && !s.contains(&b.range)).count();
                prop_assert_eq!(q.graph.bundles().len(), kept + primed);
                for v in q.graph.vertices() {
                    if let Origin::Primed(w) = q.origin[v.0] {
                        prop_assert!(q.graph.is_sink(v));
                        prop_assert!(!s.contains(&w));
                    }
                }
            }
        }
    }

    #[test]
    fn breaking_vertices_match_definition(g in graph_strategy(7, 12, true)) {
        for h in enumerate_hereditary_saturated(&g, DEFAULT_LATTICE_CAP).unwrap() {
            let b = breaking_vertices(&g, &h).unwrap();
            for v in g.vertices() {
                let out = edges_leaving(&g, v, &h);
                let expected = !h.contains(&v) && g.is_infinite_emitter(v) && out.is_finite() && !out.is_zero();
                prop_assert_eq!(b.contains(&v), expected);
            }
        }
    }

    #[test]
    fn line_point_relation_is_an_equivalence(g in graph_strategy(8, 12, true)) {
        let points = line_points(&g);
        let meets = |u: Vertex, v: Vertex| {
            let (tu, tv) = (g.tree(u).unwrap(), g.tree(v).unwrap());
            tu.intersection(&tv).next().is_some()
        };
        for &u in &points {
            for &v in &points {
                for &w in &points {
                    if meets(u, v) && meets(v, w) {
                        prop_assert!(meets(u, w));
                    }
                }
            }
        }
        let classes = line_point_classes(&g);
        let total: usize = classes.iter().map(Vec::len).sum();
        prop_assert_eq!(total, points.len());
        for class in &classes {
            for &u in class {
                for &v in class {
                    prop_assert!(meets(u, v));
                }
            }
        }
    }
}

#[test]
fn corpus_lattices() {
    for (name, g) in named_corpus() {
        let l = ideal_lattice(&g, DEFAULT_LATTICE_CAP).unwrap();
        assert!(l.poset.is_partial_order(), "{name}");
        assert!(l.poset.is_lattice(), "{name}");
        if cycles::is_acyclic(&g) {
            assert!(l.poset.is_distributive(), "{name}");
            assert!(l.all_ideals_graded, "{name}");
        }
    }
}

#[test]
fn frozen_enumerations() {
    let corpus = named_corpus();
    let get = |name: &str| corpus.iter().find(|(n, _)| *n == name).unwrap().1.clone();
    // Brute-force counts, frozen.
    let expected = [
        ("empty", 1),
        ("point", 2),
        ("chain3", 2),
        ("breaking", 5),
        ("two-sinks", 4),
        ("diamond", 2),
        ("nested-breaking", 6),
        ("toeplitz", 3),
        ("cycle-chain", 4),
    ];
    for (name, count) in expected {
        let g = get(name);
        let sets = enumerate_hereditary_saturated(&g, DEFAULT_LATTICE_CAP).unwrap();
        assert_eq!(sets, brute_force_hs(&g), "{name}");
        assert_eq!(sets.len(), count, "{name}");
    }
}
