//! Seeded random graphs and path-module samples, for property tests and
//! benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::chen::{normalize, ModuleElement, RationalInfinitePath};
use crate::cycles::{component_ids, cyclic_vertices, OMEGA_WINDOW};
use crate::field::Field;
use crate::graph::{Edge, Graph, RawGraph, Vertex};
use crate::xnat::XNat;

pub const MULTIPLICITIES: [XNat; 3] = [XNat::Fin(1), XNat::Fin(2), XNat::Omega];

pub fn vertex_name(i: usize) -> String {
    format!("v{i:02}")
}

/// Between 1 and `max_vertices` vertices and up to `max_bundles` bundles with
/// uniformly chosen endpoints and multiplicities.
pub fn random_graph(rng: &mut impl Rng, max_vertices: usize, max_bundles: usize, mults: &[XNat]) -> Graph {
    let n = rng.gen_range(1..=max_vertices);
    let b = rng.gen_range(0..=max_bundles);
    let mut raw = RawGraph::new().vertices((0..n).map(vertex_name));
    for i in 0..b {
        let (s, r) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let m = *mults.choose(rng).expect("nonempty multiplicity list");
        raw = raw.bundle(&format!("e{i:02}"), &vertex_name(s), &vertex_name(r), m);
    }
    raw.build().expect("generated graph is valid")
}

/// Like [`random_graph`], keeping only bundles from a lower to a higher
/// vertex index, so the result is acyclic.
pub fn random_dag(rng: &mut impl Rng, max_vertices: usize, max_bundles: usize, mults: &[XNat]) -> Graph {
    let n = rng.gen_range(1..=max_vertices);
    let b = rng.gen_range(0..=max_bundles);
    let mut raw = RawGraph::new().vertices((0..n).map(vertex_name));
    for i in 0..b {
        let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if x == y {
            continue;
        }
        let m = *mults.choose(rng).expect("nonempty multiplicity list");
        raw = raw.bundle(&format!("e{i:02}"), &vertex_name(x.min(y)), &vertex_name(x.max(y)), m);
    }
    raw.build().expect("generated graph is valid")
}

/// A random closed walk at a cyclic vertex: a random walk inside the
/// vertex's component, stopped on return or after `max_len` steps and then
/// closed along a shortest path. `None` for acyclic graphs.
pub fn random_closed_walk(rng: &mut impl Rng, g: &Graph, max_len: usize) -> Option<Vec<Edge>> {
    let cyclic: Vec<Vertex> = cyclic_vertices(g).into_iter().collect();
    let &start = cyclic.choose(rng)?;
    let (_, comp) = component_ids(g);
    let inside = |e: &Edge| comp[g.range(*e).0] == comp[start.0];
    let mut walk = Vec::new();
    let mut at = start;
    loop {
        let options: Vec<Edge> = g.out_edges(at, OMEGA_WINDOW).into_iter().filter(inside).collect();
        let &e = options.choose(rng).expect("a cyclic vertex has an edge inside its component");
        walk.push(e);
        at = g.range(e);
        if at == start {
            return Some(walk);
        }
        if walk.len() >= max_len.max(1) {
            walk.extend(shortest_return(g, at, start, &comp));
            return Some(walk);
        }
    }
}

fn shortest_return(g: &Graph, from: Vertex, to: Vertex, comp: &[usize]) -> Vec<Edge> {
    let mut prev: Vec<Option<Edge>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[from.0] = true;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &b in g.out_bundles(x) {
            let y = g.bundle(b).range;
            if !seen[y.0] && comp[y.0] == comp[from.0] {
                seen[y.0] = true;
                prev[y.0] = Some(Edge { bundle: b, copy: 0 });
                queue.push_back(y);
            }
        }
    }
    let mut path = Vec::new();
    let mut at = to;
    while at != from {
        let e = prev[at.0].expect("same component");
        path.push(e);
        at = g.source(e);
    }
    path.reverse();
    path
}

/// A random path of length at most `max_len` ending at `end`, built backwards.
pub fn random_path_into(rng: &mut impl Rng, g: &Graph, end: Vertex, max_len: usize) -> Vec<Edge> {
    let len = rng.gen_range(0..=max_len);
    let mut path = Vec::new();
    let mut at = end;
    for _ in 0..len {
        let incoming: Vec<Edge> = g
            .in_bundles(at)
            .iter()
            .flat_map(|&b| {
                let copies = match g.bundle(b).multiplicity {
                    XNat::Fin(n) => n,
                    XNat::Omega => OMEGA_WINDOW,
                };
                (0..copies).map(move |copy| Edge { bundle: b, copy })
            })
            .collect();
        let Some(&e) = incoming.choose(rng) else { break };
        path.push(e);
        at = g.source(e);
    }
    path.reverse();
    path
}

/// A random rational path with prefix and period lengths near the bounds.
pub fn random_rational_path(
    rng: &mut impl Rng,
    g: &Graph,
    max_prefix: usize,
    max_period: usize,
) -> Option<RationalInfinitePath> {
    let period = random_closed_walk(rng, g, max_period)?;
    let prefix = random_path_into(rng, g, g.source(period[0]), max_prefix);
    Some(normalize(g, &prefix, &period).expect("composable by construction"))
}

/// A random element with up to `max_terms` terms, all tail equivalent to
/// `seed`. Coefficients come from `coefficient`.
pub fn random_element<F: Field>(
    rng: &mut impl Rng,
    g: &Graph,
    seed: &RationalInfinitePath,
    max_terms: usize,
    mut coefficient: impl FnMut(&mut dyn rand::RngCore) -> F,
) -> ModuleElement<F> {
    let period = seed.period();
    let mut x = ModuleElement::zero();
    for _ in 0..rng.gen_range(1..=max_terms.max(1)) {
        let mut rotated = period.to_vec();
        rotated.rotate_left(rng.gen_range(0..period.len()));
        let prefix = random_path_into(rng, g, g.source(rotated[0]), 4);
        let p = normalize(g, &prefix, &rotated).expect("composable by construction");
        let c = coefficient(rng);
        x = x.plus_term(p, c).expect("same tail class");
    }
    x
}
