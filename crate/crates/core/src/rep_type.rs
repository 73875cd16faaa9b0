//! Representation type: the socular chain, the simple-module census, the
//! finite-type decision and matrix-factor sizes.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::cycles::{is_acyclic, walks_into};
use crate::graph::{Cycle, Graph, Vertex, VertexSet};
use crate::hereditary::{
    breaking_vertices_unchecked, enumerate_hereditary_saturated, hereditary_saturated_closure, quotient_graph,
    AdmissiblePair, Origin, Quotient, StructureError,
};
use crate::structure::{
    cycles_pairwise_disjoint, cycles_without_exits, line_point_classes, line_points, ray_terminal, SharedVertex,
};
use crate::xnat::XNat;

/// Cardinality of the coefficient field. Only the size matters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldCard {
    Finite(u64),
    CountablyInfinite,
    Uncountable,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FieldCardError {
    #[error("a finite field has at least 2 elements, got {0}")]
    TooSmall(u64),
    #[error("malformed field descriptor `{0}` (expected finite:<q>, countable or uncountable)")]
    Malformed(String),
}

impl FieldCard {
    pub fn finite(q: u64) -> Result<FieldCard, FieldCardError> {
        if q < 2 {
            return Err(FieldCardError::TooSmall(q));
        }
        Ok(FieldCard::Finite(q))
    }

    pub fn is_countable(self) -> bool {
        !matches!(self, FieldCard::Uncountable)
    }
}

impl FromStr for FieldCard {
    type Err = FieldCardError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "countable" => Ok(FieldCard::CountablyInfinite),
            "uncountable" => Ok(FieldCard::Uncountable),
            _ => {
                let q = s
                    .strip_prefix("finite:")
                    .and_then(|q| q.parse::<u64>().ok())
                    .ok_or_else(|| FieldCardError::Malformed(s.to_string()))?;
                FieldCard::finite(q)
            }
        }
    }
}

impl fmt::Display for FieldCard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldCard::Finite(q) => write!(f, "finite:{q}"),
            FieldCard::CountablyInfinite => f.write_str("countable"),
            FieldCard::Uncountable => f.write_str("uncountable"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorKind {
    /// `M_n(K)`
    MatrixOverK,
    /// `M_n(K[x, x⁻¹])`
    MatrixOverLaurent,
}

/// What a matrix factor is attached to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    /// A class of line points, sorted; `sink` ends the ray of every member.
    LineClass {
        members: Vec<Vertex>,
        sink: Vertex,
    },
    Cycle(Cycle),
    /// A row of a row graph.
    Row(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorDescriptor {
    pub kind: FactorKind,
    pub size: XNat,
    pub witness: Witness,
}

/// One layer of the socular chain.
#[derive(Clone, Debug)]
pub struct Stage {
    /// Cumulative pair after this stage.
    pub pair: AdmissiblePair,
    /// The quotient the stage was read off; classes, cycles and factor
    /// witnesses refer to its vertices.
    pub quotient: Quotient,
    pub classes: Vec<Vec<Vertex>>,
    pub cycles: Vec<Cycle>,
    /// Line classes first, then cycles, in the orders above.
    pub factors: Vec<FactorDescriptor>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Terminal {
    Exhausted,
    Stalled,
}

#[derive(Clone, Debug)]
pub struct SocularChain {
    pub stages: Vec<Stage>,
    pub terminal: Terminal,
    /// The nonempty quotient with neither line points nor exitless cycles.
    pub remainder: Option<Quotient>,
}

impl SocularChain {
    pub fn final_pair(&self) -> AdmissiblePair {
        self.stages.last().map(|s| s.pair.clone()).unwrap_or_else(AdmissiblePair::bottom)
    }

    pub fn class_counts(&self) -> Vec<usize> {
        self.stages.iter().map(|s| s.classes.len()).collect()
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FactorError {
    #[error("vertex is not a line point")]
    NotLinePoint,
    #[error("cycle is not a cycle without exits of this graph")]
    NotExitless,
    #[error("vertex or edge outside the graph")]
    Unknown,
}

/// Size of the matrix factor attached to a witness.
///
/// Line class (or any line point): the number of paths ending at the sink of
/// its ray. Exitless cycle: the number of paths ending on the cycle that use
/// no cycle edge, which is the number of paths ending at the base that do
/// not finish with a full turn around the cycle. Counts saturate at `ω`.
pub fn factor_size(g: &Graph, witness: &Witness) -> Result<XNat, FactorError> {
    match witness {
        Witness::LineClass { sink, .. } => {
            if !g.contains(*sink) {
                return Err(FactorError::Unknown);
            }
            if !line_points(g).contains(sink) {
                return Err(FactorError::NotLinePoint);
            }
            Ok(paths_into(g, ray_terminal(g, *sink), |_| true))
        }
        Witness::Cycle(c) => {
            if !c.edges().iter().all(|&e| g.has_edge(e)) {
                return Err(FactorError::Unknown);
            }
            if !cycles_without_exits(g).contains(c) {
                return Err(FactorError::NotExitless);
            }
            let on_cycle: Vec<_> = c.edges().iter().map(|e| e.bundle).collect();
            Ok(c.vertices(g)
                .into_iter()
                .map(|u| paths_into(g, u, |b| !on_cycle.contains(&b)))
                .fold(XNat::ZERO, saturating_add))
        }
        Witness::Row(_) => Ok(XNat::Omega),
    }
}

/// Number of paths ending at `target` using bundles accepted by `keep`.
fn paths_into(g: &Graph, target: Vertex, keep: impl Fn(crate::graph::BundleIx) -> bool) -> XNat {
    match walks_into(g, target, keep) {
        Some(counts) => counts.into_iter().fold(XNat::ZERO, saturating_add),
        None => XNat::Omega,
    }
}

fn saturating_add(a: XNat, b: XNat) -> XNat {
    a.checked_add(b).unwrap_or(XNat::Omega)
}

/// Original vertices of a quotient-vertex set; primed sinks are dropped.
fn originals(q: &Quotient, set: &VertexSet) -> VertexSet {
    set.iter()
        .filter_map(|v| match q.origin[v.0] {
            Origin::Original(w) => Some(w),
            Origin::Primed(_) => None,
        })
        .collect()
}

/// The socular chain from `(∅, ∅)`.
///
/// Each stage takes the quotient at the current pair, consumes all its line
/// points (primed sinks included) and all vertices on cycles without exits,
/// closes that set in the quotient and pulls it back. A consumed primed sink
/// `v′` moves `v` into the `S` component, so the new `S` is every old breaking
/// vertex that is still breaking.
pub fn socular_chain(g: &Graph) -> SocularChain {
    let mut pair = AdmissiblePair::bottom();
    let mut stages = Vec::new();
    while !pair.is_top(g) {
        let quotient = quotient_graph(g, &pair).expect("chain pairs are admissible");
        let q = &quotient.graph;
        let classes = line_point_classes(q);
        let cycles = cycles_without_exits(q);
        if classes.is_empty() && cycles.is_empty() {
            return SocularChain { stages, terminal: Terminal::Stalled, remainder: Some(quotient) };
        }
        let mut consumed: VertexSet = classes.iter().flatten().copied().collect();
        for c in &cycles {
            consumed.extend(c.vertices(q));
        }
        let closed = hereditary_saturated_closure(q, &consumed);
        let mut h = pair.h.clone();
        h.extend(originals(&quotient, &closed));
        let old_breaking = breaking_vertices_unchecked(g, &pair.h);
        let s = breaking_vertices_unchecked(g, &h).intersection(&old_breaking).copied().collect();

        let mut factors = Vec::new();
        for class in &classes {
            let sink = ray_terminal(q, class[0]);
            let witness = Witness::LineClass { members: class.clone(), sink };
            let size = factor_size(q, &witness).expect("class of line points");
            factors.push(FactorDescriptor { kind: FactorKind::MatrixOverK, size, witness });
        }
        for c in &cycles {
            let witness = Witness::Cycle(c.clone());
            let size = factor_size(q, &witness).expect("exitless cycle");
            factors.push(FactorDescriptor { kind: FactorKind::MatrixOverLaurent, size, witness });
        }
        pair = AdmissiblePair { h, s };
        stages.push(Stage { pair: pair.clone(), quotient, classes, cycles, factors });
    }
    SocularChain { stages, terminal: Terminal::Exhausted, remainder: None }
}

/// Number of isomorphism classes of simple modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cardinality {
    Finite(usize),
    CountablyInfinite,
    Uncountable,
}

impl Cardinality {
    pub fn is_finite(self) -> bool {
        matches!(self, Cardinality::Finite(_))
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "finite({n})"),
            Cardinality::CountablyInfinite => f.write_str("countably-infinite"),
            Cardinality::Uncountable => f.write_str("uncountable"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    SharedCycleVertex(SharedVertex),
    /// Index of the first stage that could not be formed.
    StalledChain {
        stage: usize,
    },
    /// `cycle` is expressed in the input graph.
    CycleWithField {
        stage: usize,
        cycle: Cycle,
        field: FieldCard,
    },
    /// Line-point classes per stage.
    FiniteBreakdown(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub cardinality: Cardinality,
    pub evidence: Evidence,
}

/// Decide the number of simple modules of `L_K(E)` for a field of size `k`.
pub fn classify_rep_type(g: &Graph, k: FieldCard) -> Census {
    if let Err(w) = cycles_pairwise_disjoint(g) {
        return Census { cardinality: Cardinality::Uncountable, evidence: Evidence::SharedCycleVertex(w) };
    }
    let chain = socular_chain(g);
    census_of_chain(g, &chain, k)
}

/// The census read off an already computed chain (cycles assumed disjoint).
pub fn census_of_chain(g: &Graph, chain: &SocularChain, k: FieldCard) -> Census {
    if chain.terminal == Terminal::Stalled {
        return Census {
            cardinality: Cardinality::Uncountable,
            evidence: Evidence::StalledChain { stage: chain.stages.len() },
        };
    }
    for (i, stage) in chain.stages.iter().enumerate() {
        if let Some(c) = stage.cycles.first() {
            let cardinality = if k.is_countable() { Cardinality::CountablyInfinite } else { Cardinality::Uncountable };
            let cycle = lift_cycle(g, &stage.quotient.graph, c);
            return Census { cardinality, evidence: Evidence::CycleWithField { stage: i, cycle, field: k } };
        }
    }
    let breakdown = chain.class_counts();
    Census { cardinality: Cardinality::Finite(breakdown.iter().sum()), evidence: Evidence::FiniteBreakdown(breakdown) }
}

/// Express a cycle of a quotient in the original graph. Cycles never use
/// primed edges, and original bundles keep their ids.
fn lift_cycle(g: &Graph, q: &Graph, c: &Cycle) -> Cycle {
    let edges = c
        .edges()
        .iter()
        .map(|e| {
            let id = &q.bundle(e.bundle).id;
            crate::graph::Edge { bundle: g.bundle_by_id(id).expect("quotient bundle comes from g"), copy: e.copy }
        })
        .collect();
    Cycle::canonical_unchecked(edges)
}

/// The chain `(H₁,∅) ≤ (H₁,B_{H₁}) ≤ (H₂,B_{H₁}∩B_{H₂}) ≤ (H₂,B_{H₂}) ≤ …`
/// with `H_{j+1} \ H_j` the closure of the line points of `E \ (H_j, B_{H_j})`,
/// consecutive duplicates removed. The flag is `true` when it reaches
/// `(E⁰, ∅)`; otherwise the chain stops at the first quotient without line
/// points.
pub fn graded_chain(g: &Graph) -> (Vec<AdmissiblePair>, bool) {
    let mut chain = vec![AdmissiblePair::bottom()];
    let push = |chain: &mut Vec<AdmissiblePair>, p: AdmissiblePair| {
        if chain.last() != Some(&p) {
            chain.push(p);
        }
    };
    let mut h = VertexSet::new();
    loop {
        let b = breaking_vertices_unchecked(g, &h);
        push(&mut chain, AdmissiblePair { h: h.clone(), s: b.clone() });
        if h.len() == g.vertex_count() {
            return (chain, true);
        }
        let quotient = quotient_graph(g, &AdmissiblePair { h: h.clone(), s: b.clone() }).expect("admissible");
        let points = line_points(&quotient.graph);
        if points.is_empty() {
            return (chain, false);
        }
        let closed = hereditary_saturated_closure(&quotient.graph, &points);
        h.extend(originals(&quotient, &closed));
        let s = breaking_vertices_unchecked(g, &h).intersection(&b).copied().collect();
        push(&mut chain, AdmissiblePair { h: h.clone(), s });
    }
}

/// The three graph conditions for finitely many simple modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirtVerdict {
    pub acyclic: bool,
    /// Hereditary saturated sets enumerated within the cap.
    pub finite_lattice: bool,
    pub chain_reaches_top: bool,
    pub chain: Vec<AdmissiblePair>,
}

impl FirtVerdict {
    pub fn holds(&self) -> bool {
        self.acyclic && self.finite_lattice && self.chain_reaches_top
    }
}

pub fn firt_decision(g: &Graph, cap: usize) -> FirtVerdict {
    let (chain, chain_reaches_top) = graded_chain(g);
    FirtVerdict {
        acyclic: is_acyclic(g),
        finite_lattice: enumerate_hereditary_saturated(g, cap).is_ok(),
        chain_reaches_top,
        chain,
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ChainError {
    #[error("graph has a cycle")]
    Cyclic,
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// [`graded_chain`] for graphs meeting the first two finiteness conditions.
pub fn build_admissible_chain(g: &Graph, cap: usize) -> Result<Vec<AdmissiblePair>, ChainError> {
    if !is_acyclic(g) {
        return Err(ChainError::Cyclic);
    }
    enumerate_hereditary_saturated(g, cap)?;
    let (chain, reached) = graded_chain(g);
    debug_assert!(reached, "acyclic quotients always have sinks");
    Ok(chain)
}
