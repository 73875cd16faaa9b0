#![allow(dead_code, unused_imports)]

use leavitt_core::random::vertex_name;
use leavitt_core::{Graph, RawGraph, XNat};
use proptest::prelude::*;

pub use leavitt_core::random::{random_dag, random_graph, MULTIPLICITIES as MULTS};

pub const FINITE_MULTS: [XNat; 2] = [XNat::Fin(1), XNat::Fin(2)];

fn mult_strategy(allow_omega: bool) -> BoxedStrategy<XNat> {
    if allow_omega {
        prop_oneof![Just(XNat::Fin(1)), Just(XNat::Fin(2)), Just(XNat::Omega)].boxed()
    } else {
        prop_oneof![Just(XNat::Fin(1)), Just(XNat::Fin(2))].boxed()
    }
}

/// Small graphs with `1..=max_v` vertices and up to `max_b` bundles.
pub fn graph_strategy(max_v: usize, max_b: usize, allow_omega: bool) -> impl Strategy<Value = Graph> {
    (1..=max_v).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n, mult_strategy(allow_omega)), 0..=max_b).prop_map(move |bundles| {
            let mut raw = RawGraph::new().vertices((0..n).map(vertex_name));
            for (i, (s, r, m)) in bundles.into_iter().enumerate() {
                raw = raw.bundle(&format!("e{i:02}"), &vertex_name(s), &vertex_name(r), m);
            }
            raw.build().unwrap()
        })
    })
}

fn build(raw: RawGraph) -> Graph {
    raw.build().unwrap()
}

/// Hand-made graphs covering every branch of the analysis.
pub fn named_corpus() -> Vec<(&'static str, Graph)> {
    vec![
        ("empty", Graph::empty()),
        ("point", build(RawGraph::new().vertex("v"))),
        ("chain3", build(RawGraph::new().vertices(["v1", "v2", "v3"]).edge("e1", "v1", "v2").edge("e2", "v2", "v3"))),
        (
            "breaking",
            build(RawGraph::new().vertices(["u", "h", "z"]).bundle("a", "u", "h", XNat::Omega).edge("b", "u", "z")),
        ),
        ("loop", build(RawGraph::new().vertex("v").edge("e", "v", "v"))),
        ("two-loops", build(RawGraph::new().vertex("v").edge("e", "v", "v").edge("f", "v", "v"))),
        ("apart-loops", build(RawGraph::new().vertices(["v", "w"]).edge("e", "v", "v").edge("f", "w", "w"))),
        ("loop-exit", build(RawGraph::new().vertices(["v", "w"]).edge("e", "v", "v").edge("f", "v", "w"))),
        ("loop-entry", build(RawGraph::new().vertices(["u", "v"]).edge("a", "u", "v").edge("e", "v", "v"))),
        ("two-cycle", build(RawGraph::new().vertices(["a", "b"]).edge("x", "a", "b").edge("y", "b", "a"))),
        (
            "triangle-tail",
            build(
                RawGraph::new()
                    .vertices(["a", "b", "c", "t"])
                    .edge("x", "a", "b")
                    .edge("y", "b", "c")
                    .edge("z", "c", "a")
                    .edge("w", "t", "a"),
            ),
        ),
        (
            "figure-eight",
            build(
                RawGraph::new()
                    .vertices(["a", "b", "v"])
                    .edge("va", "v", "a")
                    .edge("av", "a", "v")
                    .edge("vb", "v", "b")
                    .edge("bv", "b", "v"),
            ),
        ),
        ("double-loop", build(RawGraph::new().vertex("v").bundle("e", "v", "v", XNat::Fin(2)))),
        ("omega-loop", build(RawGraph::new().vertex("v").bundle("e", "v", "v", XNat::Omega))),
        (
            "omega-fan",
            build(RawGraph::new().vertices(["u", "w"]).bundle("a", "u", "w", XNat::Omega).edge("b", "w", "w")),
        ),
        (
            "toeplitz",
            build(RawGraph::new().vertices(["v", "w"]).edge("e", "v", "v").edge("f", "v", "w").edge("g", "w", "w")),
        ),
        (
            "diamond",
            build(
                RawGraph::new()
                    .vertices(["a", "b", "c", "d"])
                    .edge("ab", "a", "b")
                    .edge("ac", "a", "c")
                    .edge("bd", "b", "d")
                    .edge("cd", "c", "d"),
            ),
        ),
        (
            "two-sinks",
            build(RawGraph::new().vertices(["a", "s", "t"]).edge("x", "a", "s").bundle("y", "a", "t", XNat::Fin(2))),
        ),
        (
            "nested-breaking",
            build(
                RawGraph::new()
                    .vertices(["u", "v", "h", "z"])
                    .bundle("a", "u", "h", XNat::Omega)
                    .edge("b", "u", "v")
                    .bundle("c", "v", "h", XNat::Omega)
                    .edge("d", "v", "z"),
            ),
        ),
        (
            "cycle-chain",
            build(
                RawGraph::new()
                    .vertices(["a", "b", "c"])
                    .edge("aa", "a", "a")
                    .edge("ab", "a", "b")
                    .edge("bb", "b", "b")
                    .edge("bc", "b", "c"),
            ),
        ),
    ]
}
