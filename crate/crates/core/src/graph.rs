//! Finitely presented directed multigraphs.
//!
//! Parallel edges are grouped into bundles. A bundle of multiplicity `k`
//! stands for `k` parallel edges, and a bundle of multiplicity `ω` turns its
//! source into an infinite emitter. An individual edge is addressed by a
//! bundle and a copy index below the multiplicity.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::xnat::XNat;

/// Index of a vertex in a [`Graph`]. Vertices are kept sorted by identifier,
/// so the index order is the identifier order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub usize);

/// Index of a bundle in a [`Graph`], in bundle-id order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BundleIx(pub usize);

/// A single edge: one copy of a bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub bundle: BundleIx,
    pub copy: u64,
}

impl Edge {
    pub fn new(bundle: usize, copy: u64) -> Self {
        Edge { bundle: BundleIx(bundle), copy }
    }
}

pub type VertexSet = BTreeSet<Vertex>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawBundle {
    pub id: String,
    pub source: String,
    pub range: String,
    pub multiplicity: XNat,
}

/// An unvalidated graph description, as read from a file or assembled by hand.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawGraph {
    pub vertices: Vec<String>,
    pub bundles: Vec<RawBundle>,
}

impl RawGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, id: impl Into<String>) -> Self {
        self.vertices.push(id.into());
        self
    }

    pub fn vertices<I, S>(mut self, ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.vertices.extend(ids.into_iter().map(Into::into));
        self
    }

    pub fn edge(self, id: &str, source: &str, range: &str) -> Self {
        self.bundle(id, source, range, XNat::ONE)
    }

    pub fn bundle(mut self, id: &str, source: &str, range: &str, multiplicity: XNat) -> Self {
        self.bundles.push(RawBundle {
            id: id.to_string(),
            source: source.to_string(),
            range: range.to_string(),
            multiplicity,
        });
        self
    }

    pub fn build(self) -> Result<Graph, GraphError> {
        Graph::from_raw(self)
    }
}

/// An invariant violation found by [`validate_graph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateVertex { id: String },
    DuplicateBundle { id: String },
    UnknownSource { bundle: String, vertex: String },
    UnknownRange { bundle: String, vertex: String },
    EmptyBundle { bundle: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVertex { id } => write!(f, "duplicate vertex `{id}`"),
            Violation::DuplicateBundle { id } => write!(f, "duplicate edge `{id}`"),
            Violation::UnknownSource { bundle, vertex } => {
                write!(f, "edge `{bundle}` has unknown source `{vertex}`")
            }
            Violation::UnknownRange { bundle, vertex } => {
                write!(f, "edge `{bundle}` has unknown range `{vertex}`")
            }
            Violation::EmptyBundle { bundle } => write!(f, "edge `{bundle}` has multiplicity 0"),
        }
    }
}

/// Every invariant violation of `raw`; empty means valid.
pub fn validate_graph(raw: &RawGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for v in &raw.vertices {
        if !seen.insert(v.as_str()) {
            out.push(Violation::DuplicateVertex { id: v.clone() });
        }
    }
    let mut bundle_ids = BTreeSet::new();
    for b in &raw.bundles {
        if !bundle_ids.insert(b.id.as_str()) {
            out.push(Violation::DuplicateBundle { id: b.id.clone() });
        }
        if !seen.contains(b.source.as_str()) {
            out.push(Violation::UnknownSource { bundle: b.id.clone(), vertex: b.source.clone() });
        }
        if !seen.contains(b.range.as_str()) {
            out.push(Violation::UnknownRange { bundle: b.id.clone(), vertex: b.range.clone() });
        }
        if b.multiplicity.is_zero() {
            out.push(Violation::EmptyBundle { bundle: b.id.clone() });
        }
    }
    out
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid graph: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(Vertex),
    #[error("unknown edge {0:?}")]
    UnknownEdge(Edge),
    #[error("edges do not compose at position {0}")]
    BrokenPath(usize),
    #[error("path is not closed")]
    NotClosed,
    #[error("closed path is empty")]
    EmptyCycle,
    #[error("closed path visits a vertex twice")]
    NotSimple,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bundle {
    pub id: String,
    pub source: Vertex,
    pub range: Vertex,
    pub multiplicity: XNat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    Sink,
    Regular,
    InfiniteEmitter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexClass {
    pub kind: VertexKind,
    pub out_degree: XNat,
}

/// A validated graph. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    bundles: Vec<Bundle>,
    out: Vec<Vec<BundleIx>>,
    inc: Vec<Vec<BundleIx>>,
    out_degree: Vec<XNat>,
}

impl Graph {
    pub fn empty() -> Graph {
        Graph::from_raw(RawGraph::default()).expect("empty graph is valid")
    }

    pub fn from_raw(raw: RawGraph) -> Result<Graph, GraphError> {
        let violations = validate_graph(&raw);
        if !violations.is_empty() {
            return Err(GraphError::Invalid(violations));
        }
        let mut names = raw.vertices;
        names.sort();
        let lookup = |id: &str| Vertex(names.binary_search_by(|n| n.as_str().cmp(id)).unwrap());
        let mut bundles: Vec<Bundle> = raw
            .bundles
            .into_iter()
            .map(|b| Bundle {
                source: lookup(&b.source),
                range: lookup(&b.range),
                id: b.id,
                multiplicity: b.multiplicity,
            })
            .collect();
        bundles.sort_by(|a, b| a.id.cmp(&b.id));
        let n = names.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        let mut out_degree = vec![XNat::ZERO; n];
        for (i, b) in bundles.iter().enumerate() {
            out[b.source.0].push(BundleIx(i));
            inc[b.range.0].push(BundleIx(i));
            out_degree[b.source.0] = out_degree[b.source.0] + b.multiplicity;
        }
        Ok(Graph { names, bundles, out, inc, out_degree })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.names.len()).map(Vertex)
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, id: &str) -> Option<Vertex> {
        self.names.binary_search_by(|n| n.as_str().cmp(id)).ok().map(Vertex)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.0 < self.names.len()
    }

    pub fn bundles(&self) -> &[Bundle] {
        &self.bundles
    }

    pub fn bundle(&self, b: BundleIx) -> &Bundle {
        &self.bundles[b.0]
    }

    pub fn bundle_by_id(&self, id: &str) -> Option<BundleIx> {
        self.bundles.binary_search_by(|b| b.id.as_str().cmp(id)).ok().map(BundleIx)
    }

    /// Bundles emitted by `v`, in id order.
    pub fn out_bundles(&self, v: Vertex) -> &[BundleIx] {
        &self.out[v.0]
    }

    /// Bundles received by `v`, in id order.
    pub fn in_bundles(&self, v: Vertex) -> &[BundleIx] {
        &self.inc[v.0]
    }

    pub fn out_degree(&self, v: Vertex) -> XNat {
        self.out_degree[v.0]
    }

    pub fn is_sink(&self, v: Vertex) -> bool {
        self.out_degree[v.0].is_zero()
    }

    pub fn is_regular(&self, v: Vertex) -> bool {
        matches!(self.out_degree[v.0], XNat::Fin(n) if n > 0)
    }

    pub fn is_infinite_emitter(&self, v: Vertex) -> bool {
        self.out_degree[v.0] == XNat::Omega
    }

    pub fn is_row_finite(&self) -> bool {
        self.out_degree.iter().all(|d| d.is_finite())
    }

    pub fn successors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.out[v.0].iter().map(move |&b| self.bundles[b.0].range)
    }

    pub fn predecessors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.inc[v.0].iter().map(move |&b| self.bundles[b.0].source)
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        e.bundle.0 < self.bundles.len() && XNat::Fin(e.copy) < self.bundles[e.bundle.0].multiplicity
    }

    pub fn source(&self, e: Edge) -> Vertex {
        self.bundles[e.bundle.0].source
    }

    pub fn range(&self, e: Edge) -> Vertex {
        self.bundles[e.bundle.0].range
    }

    /// Human-readable edge label: the bundle id, with `[copy]` appended
    /// unless the bundle is a single edge.
    pub fn edge_label(&self, e: Edge) -> String {
        let b = &self.bundles[e.bundle.0];
        if b.multiplicity == XNat::ONE {
            b.id.clone()
        } else {
            format!("{}[{}]", b.id, e.copy)
        }
    }

    /// Edges emitted by `v`; every copy of a finite bundle and the first
    /// `omega_copies` copies of an `ω`-bundle.
    pub fn out_edges(&self, v: Vertex, omega_copies: u64) -> Vec<Edge> {
        let mut edges = Vec::new();
        for &b in &self.out[v.0] {
            let n = match self.bundles[b.0].multiplicity {
                XNat::Fin(n) => n,
                XNat::Omega => omega_copies,
            };
            edges.extend((0..n).map(|copy| Edge { bundle: b, copy }));
        }
        edges
    }

    pub fn classify_vertex(&self, v: Vertex) -> Result<VertexClass, GraphError> {
        if !self.contains(v) {
            return Err(GraphError::UnknownVertex(v));
        }
        let out_degree = self.out_degree(v);
        let kind = match out_degree {
            XNat::Fin(0) => VertexKind::Sink,
            XNat::Fin(_) => VertexKind::Regular,
            XNat::Omega => VertexKind::InfiniteEmitter,
        };
        Ok(VertexClass { kind, out_degree })
    }

    /// The tree `T(v)`: every vertex reachable from `v`, including `v`.
    pub fn tree(&self, v: Vertex) -> Result<VertexSet, GraphError> {
        if !self.contains(v) {
            return Err(GraphError::UnknownVertex(v));
        }
        Ok(self.forward_closure(std::iter::once(v)))
    }

    /// All vertices reachable from `start` (inclusive).
    pub fn forward_closure(&self, start: impl IntoIterator<Item = Vertex>) -> VertexSet {
        self.closure_by(start, |v| self.successors(v).collect())
    }

    /// All vertices that reach some vertex of `start` (inclusive).
    pub fn backward_closure(&self, start: impl IntoIterator<Item = Vertex>) -> VertexSet {
        self.closure_by(start, |v| self.predecessors(v).collect())
    }

    fn closure_by(&self, start: impl IntoIterator<Item = Vertex>, next: impl Fn(Vertex) -> Vec<Vertex>) -> VertexSet {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::new();
        for v in start {
            if !seen[v.0] {
                seen[v.0] = true;
                queue.push_back(v);
            }
        }
        while let Some(v) = queue.pop_front() {
            for w in next(v) {
                if !seen[w.0] {
                    seen[w.0] = true;
                    queue.push_back(w);
                }
            }
        }
        (0..seen.len()).filter(|&i| seen[i]).map(Vertex).collect()
    }
}

/// A finite path. The empty path carries its base vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    start: Vertex,
    edges: Vec<Edge>,
}

impl Path {
    pub fn trivial(v: Vertex) -> Path {
        Path { start: v, edges: Vec::new() }
    }

    pub fn new(g: &Graph, start: Vertex, edges: Vec<Edge>) -> Result<Path, GraphError> {
        if !g.contains(start) {
            return Err(GraphError::UnknownVertex(start));
        }
        check_composes(g, start, &edges)?;
        Ok(Path { start, edges })
    }

    /// A nonempty path; the start is the source of the first edge.
    pub fn from_edges(g: &Graph, edges: Vec<Edge>) -> Result<Path, GraphError> {
        let first = *edges.first().ok_or(GraphError::EmptyCycle)?;
        if !g.has_edge(first) {
            return Err(GraphError::UnknownEdge(first));
        }
        Path::new(g, g.source(first), edges)
    }

    pub fn start(&self) -> Vertex {
        self.start
    }

    pub fn end(&self, g: &Graph) -> Vertex {
        self.edges.last().map_or(self.start, |&e| g.range(e))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_closed(&self, g: &Graph) -> bool {
        !self.edges.is_empty() && self.end(g) == self.start
    }
}

pub(crate) fn check_composes(g: &Graph, start: Vertex, edges: &[Edge]) -> Result<(), GraphError> {
    let mut at = start;
    for (i, &e) in edges.iter().enumerate() {
        if !g.has_edge(e) {
            return Err(GraphError::UnknownEdge(e));
        }
        if g.source(e) != at {
            return Err(GraphError::BrokenPath(i));
        }
        at = g.range(e);
    }
    Ok(())
}

/// A simple closed path in canonical rotation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    edges: Vec<Edge>,
}

impl Cycle {
    /// Validates closure and simplicity, then rotates into canonical form.
    pub fn new(g: &Graph, edges: Vec<Edge>) -> Result<Cycle, GraphError> {
        if edges.is_empty() {
            return Err(GraphError::EmptyCycle);
        }
        if !g.has_edge(edges[0]) {
            return Err(GraphError::UnknownEdge(edges[0]));
        }
        let start = g.source(edges[0]);
        check_composes(g, start, &edges)?;
        if g.range(*edges.last().unwrap()) != start {
            return Err(GraphError::NotClosed);
        }
        let sources: BTreeSet<Vertex> = edges.iter().map(|&e| g.source(e)).collect();
        if sources.len() != edges.len() {
            return Err(GraphError::NotSimple);
        }
        Ok(Cycle::canonical_unchecked(edges))
    }

    /// Rotate so the smallest edge comes first. Edges of a simple cycle are
    /// pairwise distinct, so this is the lexicographically least rotation.
    pub(crate) fn canonical_unchecked(mut edges: Vec<Edge>) -> Cycle {
        let (pos, _) = edges.iter().enumerate().min_by_key(|(_, e)| **e).expect("nonempty cycle");
        edges.rotate_left(pos);
        Cycle { edges }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Source of the first edge in canonical rotation.
    pub fn base(&self, g: &Graph) -> Vertex {
        g.source(self.edges[0])
    }

    pub fn vertices(&self, g: &Graph) -> VertexSet {
        self.edges.iter().map(|&e| g.source(e)).collect()
    }

    pub fn label(&self, g: &Graph) -> String {
        self.edges.iter().map(|&e| g.edge_label(e)).collect::<Vec<_>>().join(" ")
    }
}
