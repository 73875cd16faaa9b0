//! Hereditary saturated sets, breaking vertices, admissible pairs and
//! quotient graphs.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, RawGraph, Vertex, VertexSet};
use crate::xnat::XNat;

/// Default bound on the number of sets (or pairs) an enumeration may produce.
pub const DEFAULT_LATTICE_CAP: usize = 100_000;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("lattice too large: more than {cap} elements")]
    LatticeTooLarge { cap: usize },
    #[error("vertex set is not hereditary and saturated")]
    NotHereditarySaturated,
    #[error("breaking-vertex component is not contained in the breaking vertices of H")]
    NotAdmissible,
}

/// Least hereditary saturated set containing `seed`.
///
/// Forward closure first, then repeated saturation: a regular vertex all of
/// whose edges land inside joins. Sinks and infinite emitters never saturate.
pub fn hereditary_saturated_closure(g: &Graph, seed: &VertexSet) -> VertexSet {
    let forward = g.forward_closure(seed.iter().copied());
    let mut inside = vec![false; g.vertex_count()];
    for v in &forward {
        inside[v.0] = true;
    }
    // Bundles of each vertex whose range has not yet been processed.
    let mut outside: Vec<usize> = g.vertices().map(|v| g.out_bundles(v).len()).collect();
    let mut queue: VecDeque<Vertex> = forward.iter().copied().collect();
    while let Some(w) = queue.pop_front() {
        for &b in g.in_bundles(w) {
            let u = g.bundle(b).source;
            if inside[u.0] {
                continue;
            }
            outside[u.0] -= 1;
            if outside[u.0] == 0 && g.is_regular(u) {
                inside[u.0] = true;
                queue.push_back(u);
            }
        }
    }
    g.vertices().filter(|v| inside[v.0]).collect()
}

pub fn is_hereditary(g: &Graph, h: &VertexSet) -> bool {
    h.iter().all(|&v| g.successors(v).all(|w| h.contains(&w)))
}

pub fn is_saturated(g: &Graph, h: &VertexSet) -> bool {
    g.vertices().filter(|v| !h.contains(v) && g.is_regular(*v)).all(|v| g.successors(v).any(|w| !h.contains(&w)))
}

pub fn is_hereditary_saturated(g: &Graph, h: &VertexSet) -> bool {
    is_hereditary(g, h) && is_saturated(g, h)
}

/// Canonical order for families of vertex sets: by size, then lexicographic.
pub fn set_order(a: &VertexSet, b: &VertexSet) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Every hereditary saturated subset of `g`, sorted by [`set_order`].
///
/// Breadth-first search from `∅`, adjoining `closure(H ∪ {v})` for each
/// `v ∉ H`. Every such set is reached: adding the members of a target set one
/// at a time never leaves it.
pub fn enumerate_hereditary_saturated(g: &Graph, cap: usize) -> Result<Vec<VertexSet>, StructureError> {
    let mut seen: BTreeSet<VertexSet> = BTreeSet::new();
    let start = VertexSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(h) = queue.pop_front() {
        for v in g.vertices().filter(|v| !h.contains(v)) {
            let mut seed = h.clone();
            seed.insert(v);
            let next = hereditary_saturated_closure(g, &seed);
            if !seen.contains(&next) {
                if seen.len() >= cap {
                    return Err(StructureError::LatticeTooLarge { cap });
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<VertexSet> = seen.into_iter().collect();
    out.sort_by(set_order);
    Ok(out)
}

/// Edges (with multiplicity) from `v` into the complement of `h`.
pub fn edges_leaving(g: &Graph, v: Vertex, h: &VertexSet) -> XNat {
    g.out_bundles(v).iter().map(|&b| g.bundle(b)).filter(|b| !h.contains(&b.range)).map(|b| b.multiplicity).sum()
}

/// `B_H`: infinite emitters outside `h` sending finitely many, and at least
/// one, edges into the complement of `h`.
pub fn breaking_vertices(g: &Graph, h: &VertexSet) -> Result<VertexSet, StructureError> {
    if !is_hereditary_saturated(g, h) {
        return Err(StructureError::NotHereditarySaturated);
    }
    Ok(breaking_vertices_unchecked(g, h))
}

pub(crate) fn breaking_vertices_unchecked(g: &Graph, h: &VertexSet) -> VertexSet {
    g.vertices()
        .filter(|v| !h.contains(v) && g.is_infinite_emitter(*v))
        .filter(|&v| matches!(edges_leaving(g, v, h), XNat::Fin(n) if n >= 1))
        .collect()
}

/// A pair `(H, S)` with `H` hereditary saturated and `S ⊆ B_H`. It labels the
/// graded ideal generated by `H` and the elements `v^H`, `v ∈ S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdmissiblePair {
    pub h: VertexSet,
    pub s: VertexSet,
}

impl AdmissiblePair {
    pub fn new(g: &Graph, h: VertexSet, s: VertexSet) -> Result<AdmissiblePair, StructureError> {
        let breaking = breaking_vertices(g, &h)?;
        if !s.is_subset(&breaking) {
            return Err(StructureError::NotAdmissible);
        }
        Ok(AdmissiblePair { h, s })
    }

    pub fn bottom() -> AdmissiblePair {
        AdmissiblePair { h: VertexSet::new(), s: VertexSet::new() }
    }

    pub fn top(g: &Graph) -> AdmissiblePair {
        AdmissiblePair { h: g.all_vertices(), s: VertexSet::new() }
    }

    /// Ideal containment: `H₁ ⊆ H₂` and `S₁ ⊆ H₂ ∪ S₂`.
    pub fn leq(&self, other: &AdmissiblePair) -> bool {
        self.h.is_subset(&other.h) && self.s.iter().all(|v| other.h.contains(v) || other.s.contains(v))
    }

    pub fn is_top(&self, g: &Graph) -> bool {
        self.h.len() == g.vertex_count() && self.s.is_empty()
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> PairDisplay<'a> {
        PairDisplay { pair: self, graph: g }
    }
}

/// Smallest admissible pair above both arguments.
///
/// `H` starts as the closure of `H₁ ∪ H₂`; a vertex of `S₁ ∪ S₂` left with no
/// edges outside `H` is absorbed into `H` (its `v^H` equals `v`), and the
/// closure is retaken until nothing changes.
pub fn pair_join(g: &Graph, a: &AdmissiblePair, b: &AdmissiblePair) -> AdmissiblePair {
    let mut h: VertexSet = a.h.union(&b.h).copied().collect();
    let candidates: VertexSet = a.s.union(&b.s).copied().collect();
    loop {
        h = hereditary_saturated_closure(g, &h);
        let absorbed: Vec<Vertex> =
            candidates.iter().copied().filter(|v| !h.contains(v) && edges_leaving(g, *v, &h).is_zero()).collect();
        if absorbed.is_empty() {
            break;
        }
        h.extend(absorbed);
    }
    let s = candidates.into_iter().filter(|v| !h.contains(v)).collect();
    AdmissiblePair { h, s }
}

/// Largest admissible pair below both arguments: `H₁ ∩ H₂`, keeping the
/// breaking vertices of that set lying in both `H₁ ∪ S₁` and `H₂ ∪ S₂`.
pub fn pair_meet(g: &Graph, a: &AdmissiblePair, b: &AdmissiblePair) -> AdmissiblePair {
    let h: VertexSet = a.h.intersection(&b.h).copied().collect();
    let within = |p: &AdmissiblePair, v: &Vertex| p.h.contains(v) || p.s.contains(v);
    let s = breaking_vertices_unchecked(g, &h).into_iter().filter(|v| within(a, v) && within(b, v)).collect();
    AdmissiblePair { h, s }
}

impl PartialOrd for AdmissiblePair {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical listing order (not the ideal order): by `H` in [`set_order`],
/// then by `S` likewise.
impl Ord for AdmissiblePair {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        set_order(&self.h, &other.h).then_with(|| set_order(&self.s, &other.s))
    }
}

pub struct PairDisplay<'a> {
    pair: &'a AdmissiblePair,
    graph: &'a Graph,
}

pub fn format_set(g: &Graph, set: &VertexSet) -> String {
    let names: Vec<&str> = set.iter().map(|&v| g.name(v)).collect();
    format!("{{{}}}", names.join(","))
}

impl fmt::Display for PairDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_set(self.graph, &self.pair.h), format_set(self.graph, &self.pair.s))
    }
}

/// Where a vertex of a quotient graph comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Origin {
    Original(Vertex),
    /// The sink `v′` added for a breaking vertex `v ∉ S`.
    Primed(Vertex),
}

/// The quotient graph `E \ (H, S)` with provenance of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub graph: Graph,
    /// Indexed by quotient vertex.
    pub origin: Vec<Origin>,
}

impl Quotient {
    /// The quotient vertex standing for original vertex `v`, if it survives.
    pub fn image(&self, v: Vertex) -> Option<Vertex> {
        self.origin.iter().position(|o| *o == Origin::Original(v)).map(Vertex)
    }

    pub fn primed_image(&self, v: Vertex) -> Option<Vertex> {
        self.origin.iter().position(|o| *o == Origin::Primed(v)).map(Vertex)
    }
}

/// Append primes to `base` until it collides with nothing in `taken`.
fn fresh_primed(base: &str, taken: &BTreeSet<String>) -> String {
    let mut name = format!("{base}'");
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// The quotient graph `E \ (H, S)`.
///
/// Vertices: `E⁰ \ H` plus a sink `v′` for each `v ∈ B_H \ S`. Edges: every
/// edge with range outside `H`, plus a copy `e′` into `r(e)′` of each edge
/// whose range is in `B_H \ S`. Primed names get extra `'` if they would
/// collide with an existing identifier.
pub fn quotient_graph(g: &Graph, pair: &AdmissiblePair) -> Result<Quotient, StructureError> {
    let breaking = breaking_vertices(g, &pair.h)?;
    if !pair.s.is_subset(&breaking) {
        return Err(StructureError::NotAdmissible);
    }
    let unselected: VertexSet = breaking.difference(&pair.s).copied().collect();

    let mut taken: BTreeSet<String> = g.names().iter().cloned().collect();
    taken.extend(g.bundles().iter().map(|b| b.id.clone()));
    let mut primed_name = Vec::new();
    for &v in &unselected {
        let name = fresh_primed(g.name(v), &taken);
        taken.insert(name.clone());
        primed_name.push((v, name));
    }
    let prime_of = |v: Vertex| primed_name.iter().find(|(w, _)| *w == v).map(|(_, n)| n.clone()).unwrap();

    let mut raw = RawGraph::new();
    let mut origins: Vec<(String, Origin)> = Vec::new();
    for v in g.vertices().filter(|v| !pair.h.contains(v)) {
        raw.vertices.push(g.name(v).to_string());
        origins.push((g.name(v).to_string(), Origin::Original(v)));
    }
    for (v, name) in &primed_name {
        raw.vertices.push(name.clone());
        origins.push((name.clone(), Origin::Primed(*v)));
    }
    for b in g.bundles() {
        if pair.h.contains(&b.range) {
            continue;
        }
        raw = raw.bundle(&b.id, g.name(b.source), g.name(b.range), b.multiplicity);
        if unselected.contains(&b.range) {
            let id = fresh_primed(&b.id, &taken);
            taken.insert(id.clone());
            raw = raw.bundle(&id, g.name(b.source), &prime_of(b.range), b.multiplicity);
        }
    }
    let graph = raw.build().expect("quotient of a valid graph is valid");
    let mut origin = vec![Origin::Original(Vertex(0)); graph.vertex_count()];
    for (name, o) in origins {
        origin[graph.vertex(&name).unwrap().0] = o;
    }
    Ok(Quotient { graph, origin })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn breaking_example() -> Graph {
        RawGraph::new()
            .vertices(["u", "h", "z"])
            .bundle("a", "u", "h", XNat::Omega)
            .edge("b", "u", "z")
            .build()
            .unwrap()
    }

    fn set(g: &Graph, ids: &[&str]) -> VertexSet {
        ids.iter().map(|id| g.vertex(id).unwrap()).collect()
    }

    fn chain3() -> Graph {
        RawGraph::new().vertices(["v1", "v2", "v3"]).edge("e1", "v1", "v2").edge("e2", "v2", "v3").build().unwrap()
    }

    #[test]
    fn closure_examples() {
        let g = chain3();
        assert!(hereditary_saturated_closure(&g, &VertexSet::new()).is_empty());
        assert_eq!(hereditary_saturated_closure(&g, &set(&g, &["v1"])), g.all_vertices());
        assert_eq!(hereditary_saturated_closure(&g, &set(&g, &["v3"])), g.all_vertices());
    }

    #[test]
    fn enumeration_examples() {
        let single = RawGraph::new().vertex("v").build().unwrap();
        assert_eq!(enumerate_hereditary_saturated(&single, 10).unwrap(), vec![VertexSet::new(), single.all_vertices()]);

        let g = breaking_example();
        let got = enumerate_hereditary_saturated(&g, DEFAULT_LATTICE_CAP).unwrap();
        let want =
            vec![VertexSet::new(), set(&g, &["h"]), set(&g, &["z"]), set(&g, &["h", "z"]), set(&g, &["h", "u", "z"])];
        assert_eq!(got, want);

        let c = chain3();
        assert_eq!(enumerate_hereditary_saturated(&c, 100).unwrap(), vec![VertexSet::new(), c.all_vertices()]);
    }

    #[test]
    fn enumeration_respects_cap() {
        let g = breaking_example();
        assert_eq!(enumerate_hereditary_saturated(&g, 3), Err(StructureError::LatticeTooLarge { cap: 3 }));
    }

    #[test]
    fn breaking_vertex_examples() {
        let g = breaking_example();
        assert_eq!(breaking_vertices(&g, &set(&g, &["h"])).unwrap(), set(&g, &["u"]));
        assert!(breaking_vertices(&g, &set(&g, &["h", "z"])).unwrap().is_empty());
        assert!(breaking_vertices(&g, &VertexSet::new()).unwrap().is_empty());
        assert_eq!(breaking_vertices(&g, &set(&g, &["u"])), Err(StructureError::NotHereditarySaturated));
        let c = chain3();
        for h in enumerate_hereditary_saturated(&c, 100).unwrap() {
            assert!(breaking_vertices(&c, &h).unwrap().is_empty());
        }
    }

    #[test]
    fn admissible_pairs_validate() {
        let g = breaking_example();
        assert!(AdmissiblePair::new(&g, set(&g, &["h"]), set(&g, &["u"])).is_ok());
        assert_eq!(AdmissiblePair::new(&g, set(&g, &["z"]), set(&g, &["u"])), Err(StructureError::NotAdmissible));
    }

    #[test]
    fn quotient_examples() {
        let g = breaking_example();
        let q = quotient_graph(&g, &AdmissiblePair::bottom()).unwrap();
        assert_eq!(q.graph, g);

        let top = quotient_graph(&g, &AdmissiblePair::top(&g)).unwrap();
        assert!(top.graph.is_empty());

        let pair = AdmissiblePair::new(&g, set(&g, &["h"]), VertexSet::new()).unwrap();
        let q = quotient_graph(&g, &pair).unwrap();
        assert_eq!(q.graph.names(), ["u", "u'", "z"]);
        assert_eq!(q.graph.bundles().len(), 1);
        assert_eq!(q.graph.bundles()[0].id, "b");
        let up = q.graph.vertex("u'").unwrap();
        assert!(q.graph.is_sink(up));
        assert_eq!(q.origin[up.0], Origin::Primed(g.vertex("u").unwrap()));
        assert_eq!(q.image(g.vertex("z").unwrap()), q.graph.vertex("z"));
    }

    #[test]
    fn primed_names_avoid_collisions() {
        let g = RawGraph::new()
            .vertices(["u", "u'", "h", "z"])
            .bundle("a", "u", "h", XNat::Omega)
            .edge("b", "u", "z")
            .edge("c", "z", "u")
            .edge("d", "u'", "u")
            .build()
            .unwrap();
        let h = set(&g, &["h"]);
        assert_eq!(breaking_vertices(&g, &h).unwrap(), set(&g, &["u"]));
        let q = quotient_graph(&g, &AdmissiblePair { h, s: VertexSet::new() }).unwrap();
        assert!(q.graph.vertex("u''").is_some());
        // c: z -> u and d: u' -> u both gain primed copies into u''.
        assert_eq!(q.graph.bundles().len(), 5);
        assert_eq!(q.graph.vertex_count(), 4);
    }
}
