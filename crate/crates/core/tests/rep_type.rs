mod common;

use common::*;
use leavitt_core::hereditary::{is_hereditary_saturated, quotient_graph};
use leavitt_core::lattice::ideal_lattice;
use leavitt_core::rep_type::{
    census_of_chain, classify_rep_type, factor_size, firt_decision, socular_chain, Cardinality, Evidence, FactorKind,
    FieldCard, Terminal, Witness,
};
use leavitt_core::structure::{condition_k, cycles_pairwise_disjoint, cycles_without_exits, line_points};
use leavitt_core::{cycles, AdmissiblePair, Edge, Graph, Vertex, XNat, DEFAULT_LATTICE_CAP};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FIELDS: [FieldCard; 3] = [FieldCard::Finite(2), FieldCard::CountablyInfinite, FieldCard::Uncountable];

/// Paths (edge sequences) ending at one of `targets`, counted by explicit
/// backward enumeration over individual edges, skipping `avoid`. A path of
/// length |V| repeats a vertex and can be pumped, so it means ω.
fn brute_paths_into(g: &Graph, targets: &[Vertex], avoid: &[Edge]) -> XNat {
    let edges: Vec<Edge> = g.vertices().flat_map(|v| g.out_edges(v, 0)).filter(|e| !avoid.contains(e)).collect();
    let n = g.vertex_count();
    let mut total = 0u64;
    for &t in targets {
        let mut frontier: Vec<Vertex> = vec![t];
        for len in 0..=n {
            if len == n && !frontier.is_empty() {
                return XNat::Omega;
            }
            total += frontier.len() as u64;
            let mut next = Vec::new();
            for &w in &frontier {
                // Cycle witnesses: walks stop at their first arrival on the cycle.
                if len > 0 && targets.contains(&w) {
                    continue;
                }
                for e in edges.iter().filter(|e| g.range(**e) == w) {
                    next.push(g.source(*e));
                }
            }
            // Paths that re-entered a target are not first arrivals.
            frontier = next;
        }
    }
    XNat::Fin(total)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn sink_factor_sizes_match_path_enumeration(g in graph_strategy(8, 10, false)) {
        for v in line_points(&g) {
            if g.is_sink(v) {
                let w = Witness::LineClass { members: vec![v], sink: v };
                prop_assert_eq!(factor_size(&g, &w).unwrap(), brute_paths_into(&g, &[v], &[]));
            }
        }
    }

    #[test]
    fn cycle_factor_sizes_match_path_enumeration(g in graph_strategy(7, 9, false)) {
        for c in cycles_without_exits(&g) {
            let targets: Vec<Vertex> = c.vertices(&g).into_iter().collect();
            let expected = brute_paths_into(&g, &targets, c.edges());
            prop_assert_eq!(factor_size(&g, &Witness::Cycle(c)).unwrap(), expected);
        }
    }

    #[test]
    fn socular_chain_invariants(g in graph_strategy(8, 12, true)) {
        let chain = socular_chain(&g);
        let mut prev = AdmissiblePair::bottom();
        for stage in &chain.stages {
            let p = &stage.pair;
            prop_assert!(is_hereditary_saturated(&g, &p.h));
            prop_assert!(AdmissiblePair::new(&g, p.h.clone(), p.s.clone()).is_ok());
            prop_assert!(prev.leq(p) && prev != *p);
            prop_assert_eq!(stage.factors.len(), stage.classes.len() + stage.cycles.len());
            for f in &stage.factors {
                prop_assert!(f.size >= XNat::ONE);
                prop_assert_eq!(f.kind == FactorKind::MatrixOverLaurent, matches!(f.witness, Witness::Cycle(_)));
            }
            prev = p.clone();
        }
        match chain.terminal {
            Terminal::Exhausted => prop_assert!(chain.final_pair().is_top(&g)),
            Terminal::Stalled => {
                let rest = chain.remainder.as_ref().unwrap();
                prop_assert!(!rest.graph.is_empty());
                prop_assert_eq!(rest, &quotient_graph(&g, &chain.final_pair()).unwrap());
                prop_assert!(line_points(&rest.graph).is_empty());
                prop_assert!(cycles_without_exits(&rest.graph).is_empty());
            }
        }
        if cycles_pairwise_disjoint(&g).is_ok() {
            prop_assert_eq!(chain.terminal, Terminal::Exhausted);
        }
    }

    #[test]
    fn census_consistency(g in graph_strategy(8, 14, true)) {
        let verdict = firt_decision(&g, DEFAULT_LATTICE_CAP);
        for k in FIELDS {
            let census = classify_rep_type(&g, k);
            prop_assert_eq!(verdict.holds(), census.cardinality.is_finite());
            if cycles::is_acyclic(&g) {
                prop_assert!(census.cardinality.is_finite());
            }
            if let Evidence::SharedCycleVertex(_) = census.evidence {
                prop_assert!(!verdict.holds());
                prop_assert_eq!(census.cardinality, Cardinality::Uncountable);
            }
            if let Evidence::CycleWithField { field, .. } = census.evidence {
                prop_assert_eq!(field, k);
                prop_assert_eq!(census.cardinality == Cardinality::Uncountable, k == FieldCard::Uncountable);
            }
        }
        // Shared cycle vertices never leave Condition (K) in doubt about acyclicity.
        if condition_k(&g) && !cycles::is_acyclic(&g) {
            prop_assert!(cycles_pairwise_disjoint(&g).is_err());
        }
    }
}

#[test]
fn finite_census_counts_join_irreducibles() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..400 {
        let g = random_dag(&mut rng, 7, 12, &MULTS);
        let census = classify_rep_type(&g, FieldCard::CountablyInfinite);
        let Cardinality::Finite(n) = census.cardinality else { panic!("acyclic graph must be finite") };
        let Evidence::FiniteBreakdown(per_stage) = census.evidence else { panic!("finite census carries breakdown") };
        assert_eq!(per_stage.iter().sum::<usize>(), n);
        let lattice = ideal_lattice(&g, DEFAULT_LATTICE_CAP).unwrap();
        assert_eq!(n, lattice.join_irreducibles().len(), "{g:?}");
    }
}

#[test]
fn firt_matches_census_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..400 {
        let g = random_graph(&mut rng, 8, 14, &MULTS);
        let verdict = firt_decision(&g, DEFAULT_LATTICE_CAP);
        let census = classify_rep_type(&g, FieldCard::CountablyInfinite);
        assert_eq!(verdict.holds(), census.cardinality.is_finite(), "{g:?}");
    }
}

#[test]
fn frozen_corpus_census() {
    // Census under a countable field, checked by hand against the stage
    // construction.
    let expected = [
        ("empty", Cardinality::Finite(0)),
        ("point", Cardinality::Finite(1)),
        ("chain3", Cardinality::Finite(1)),
        ("breaking", Cardinality::Finite(3)),
        ("loop", Cardinality::CountablyInfinite),
        ("two-loops", Cardinality::Uncountable),
        ("apart-loops", Cardinality::CountablyInfinite),
        ("loop-exit", Cardinality::CountablyInfinite),
        ("loop-entry", Cardinality::CountablyInfinite),
        ("two-cycle", Cardinality::CountablyInfinite),
        ("triangle-tail", Cardinality::CountablyInfinite),
        ("figure-eight", Cardinality::Uncountable),
        ("double-loop", Cardinality::Uncountable),
        ("omega-loop", Cardinality::Uncountable),
        ("omega-fan", Cardinality::CountablyInfinite),
        ("toeplitz", Cardinality::CountablyInfinite),
        ("diamond", Cardinality::Finite(1)),
        ("two-sinks", Cardinality::Finite(2)),
        ("nested-breaking", Cardinality::Finite(4)),
        ("cycle-chain", Cardinality::CountablyInfinite),
    ];
    let corpus = named_corpus();
    assert_eq!(corpus.len(), expected.len());
    for ((name, g), (want_name, want)) in corpus.iter().zip(expected) {
        assert_eq!(*name, want_name);
        let census = classify_rep_type(g, FieldCard::CountablyInfinite);
        assert_eq!(census.cardinality, want, "{name}");
        let chain = socular_chain(g);
        if cycles_pairwise_disjoint(g).is_ok() {
            assert_eq!(census_of_chain(g, &chain, FieldCard::CountablyInfinite), census, "{name}");
        }
        if let Cardinality::Finite(n) = want {
            assert_eq!(ideal_lattice(g, DEFAULT_LATTICE_CAP).unwrap().join_irreducibles().len(), n, "{name}");
        }
    }
}

#[test]
fn stage_sizes_on_corpus() {
    let corpus = named_corpus();
    let get = |name: &str| corpus.iter().find(|(n, _)| *n == name).unwrap().1.clone();
    let sizes = |g: &Graph| -> Vec<Vec<XNat>> {
        socular_chain(g).stages.iter().map(|s| s.factors.iter().map(|f| f.size).collect()).collect()
    };
    assert_eq!(sizes(&get("two-sinks")), vec![vec![XNat::Fin(2), XNat::Fin(3)]]);
    assert_eq!(sizes(&get("triangle-tail")), vec![vec![XNat::Fin(4)]]);
    assert_eq!(sizes(&get("toeplitz")), vec![vec![XNat::Omega], vec![XNat::ONE]]);
    assert_eq!(sizes(&get("omega-fan")), vec![vec![XNat::Omega], vec![XNat::ONE]]);
    assert_eq!(sizes(&get("nested-breaking")), vec![vec![XNat::Omega, XNat::Fin(3)], vec![XNat::Fin(2), XNat::ONE]]);
}
