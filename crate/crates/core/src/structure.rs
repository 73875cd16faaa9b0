//! Graph predicates: line points, exitless cycles, cycle disjointness and
//! Condition (K).

use std::collections::BTreeMap;

use crate::cycles::{self, component_ids, cyclic_vertices, enumerate_simple_cycles, walks_into};
use crate::graph::{Cycle, Edge, Graph, Vertex, VertexSet};
use crate::xnat::XNat;

/// Vertices whose tree contains no bifurcation and no vertex on a cycle.
pub fn line_points(g: &Graph) -> VertexSet {
    let mut bad = cyclic_vertices(g);
    bad.extend(g.vertices().filter(|&v| g.out_degree(v) > XNat::ONE));
    let tainted = g.backward_closure(bad);
    g.vertices().filter(|v| !tainted.contains(v)).collect()
}

/// Line points grouped by `T(u) ∩ T(v) ≠ ∅`. Classes are sorted, and
/// listed by their smallest member.
pub fn line_point_classes(g: &Graph) -> Vec<Vec<Vertex>> {
    let points = line_points(g);
    let mut uf = UnionFind::new(g.vertex_count());
    for &u in &points {
        // Every vertex of the tree of a line point is itself a line point.
        for w in g.forward_closure([u]) {
            uf.union(u.0, w.0);
        }
    }
    let mut classes: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
    for &u in &points {
        classes.entry(uf.find(u.0)).or_default().push(u);
    }
    let mut out: Vec<Vec<Vertex>> = classes.into_values().collect();
    out.sort();
    out
}

/// The sink at the end of the ray starting at line point `v`.
pub fn ray_terminal(g: &Graph, v: Vertex) -> Vertex {
    let mut at = v;
    let mut steps = 0;
    while let Some(w) = g.successors(at).next() {
        at = w;
        steps += 1;
        assert!(steps <= g.vertex_count(), "ray_terminal called on a vertex that is not a line point");
    }
    at
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Simple cycles every vertex of which emits exactly one edge.
///
/// Such a cycle is a whole strongly connected component in which every
/// vertex has out-degree one.
pub fn cycles_without_exits(g: &Graph) -> Vec<Cycle> {
    let (comps, id) = component_ids(g);
    let mut out = Vec::new();
    for (i, comp) in comps.iter().enumerate() {
        let closed = comp.iter().all(|&v| g.out_degree(v) == XNat::ONE && g.successors(v).all(|w| id[w.0] == i));
        if !closed {
            continue;
        }
        let mut ordered = Vec::with_capacity(comp.len());
        let mut at = comp[0];
        loop {
            let e = Edge { bundle: g.out_bundles(at)[0], copy: 0 };
            ordered.push(e);
            at = g.range(e);
            if at == comp[0] {
                break;
            }
        }
        debug_assert_eq!(ordered.len(), comp.len());
        out.push(Cycle::canonical_unchecked(ordered));
    }
    out.sort();
    out
}

/// A vertex lying on two distinct simple cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharedVertex {
    pub vertex: Vertex,
    pub first: Cycle,
    pub second: Cycle,
}

/// `Ok(())` when distinct cycles never share a vertex, otherwise a witness.
///
/// Works component by component: a nontrivial component is a single cycle
/// exactly when each of its vertices emits one edge copy inside it. When some
/// vertex `v` emits two, each of those edges closes up into a simple cycle
/// through `v` along a shortest return path.
pub fn cycles_pairwise_disjoint(g: &Graph) -> Result<(), SharedVertex> {
    let (comps, id) = component_ids(g);
    for v in g.vertices() {
        let inside: Vec<Edge> =
            g.out_edges(v, cycles::OMEGA_WINDOW).into_iter().filter(|&e| id[g.range(e).0] == id[v.0]).take(2).collect();
        if inside.len() < 2 {
            continue;
        }
        let comp = &comps[id[v.0]];
        let close = |e: Edge| {
            let mut edges = vec![e];
            edges.extend(shortest_path_within(g, g.range(e), v, comp));
            Cycle::canonical_unchecked(edges)
        };
        let (a, b) = (close(inside[0]), close(inside[1]));
        let (first, second) = if a <= b { (a, b) } else { (b, a) };
        return Err(SharedVertex { vertex: v, first, second });
    }
    Ok(())
}

/// Reference route for [`cycles_pairwise_disjoint`]: enumerate all simple
/// cycles and look for a repeated vertex.
pub fn cycles_pairwise_disjoint_by_enumeration(g: &Graph) -> Result<(), SharedVertex> {
    let (cycles, _) = enumerate_simple_cycles(g);
    let mut owner: BTreeMap<Vertex, &Cycle> = BTreeMap::new();
    for c in &cycles {
        for v in c.vertices(g) {
            if let Some(prev) = owner.insert(v, c) {
                return Err(SharedVertex { vertex: v, first: prev.clone(), second: c.clone() });
            }
        }
    }
    Ok(())
}

/// Edges of a shortest path from `from` to `to` staying inside `comp`.
/// Empty when `from == to`.
fn shortest_path_within(g: &Graph, from: Vertex, to: Vertex, comp: &[Vertex]) -> Vec<Edge> {
    if from == to {
        return Vec::new();
    }
    let mut prev: BTreeMap<Vertex, Edge> = BTreeMap::new();
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for &b in g.out_bundles(x) {
            let y = g.bundle(b).range;
            if y == from || prev.contains_key(&y) || comp.binary_search(&y).is_err() {
                continue;
            }
            prev.insert(y, Edge { bundle: b, copy: 0 });
            if y == to {
                let mut path = Vec::new();
                let mut at = to;
                while at != from {
                    let e = prev[&at];
                    path.push(e);
                    at = g.source(e);
                }
                path.reverse();
                return path;
            }
            queue.push_back(y);
        }
    }
    unreachable!("vertices of one strongly connected component are mutually reachable")
}

/// Number of simple closed paths based at `v` (closed paths returning to `v`
/// only at their end), counted up to `cap`.
pub fn simple_closed_paths_at(g: &Graph, v: Vertex, cap: u64) -> u64 {
    let counts = walks_into(g, v, |_| true).unwrap_or_else(|| vec![XNat::Omega; g.vertex_count()]);
    let cap = XNat::Fin(cap);
    let mut total = XNat::ZERO;
    for &b in g.out_bundles(v) {
        let bundle = g.bundle(b);
        let returns = if bundle.range == v { XNat::ONE } else { counts[bundle.range.0] };
        let contribution = bundle.multiplicity.checked_mul(returns).unwrap_or(XNat::Omega);
        total = total.checked_add(contribution).unwrap_or(XNat::Omega).min(cap);
    }
    total.finite().unwrap_or(0).min(cap.finite().unwrap())
}

/// Condition (K): no vertex is the base of exactly one simple closed path.
pub fn condition_k(g: &Graph) -> bool {
    cyclic_vertices(g).into_iter().all(|v| simple_closed_paths_at(g, v, 2) >= 2)
}
