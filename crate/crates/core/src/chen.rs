//! Rational infinite paths, tail equivalence and Chen's path modules.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::cycles::{enumerate_simple_cycles, OMEGA_WINDOW};
use crate::field::Field;
use crate::graph::{check_composes, Edge, Graph, GraphError, Path, Vertex};
use crate::structure::cycles_pairwise_disjoint;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ChenError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("generator is not part of the graph")]
    UnknownGenerator,
    #[error("terms belong to different tail classes")]
    MixedClasses,
}

/// The eventually periodic path `prefix · period · period · …`.
///
/// Always normalized: the period is primitive and the prefix does not end
/// with the period's last edge. With those two rules equal infinite paths
/// have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalInfinitePath {
    prefix: Vec<Edge>,
    period: Vec<Edge>,
}

impl RationalInfinitePath {
    pub fn prefix(&self) -> &[Edge] {
        &self.prefix
    }

    pub fn period(&self) -> &[Edge] {
        &self.period
    }

    pub fn source(&self, g: &Graph) -> Vertex {
        g.source(*self.prefix.first().unwrap_or(&self.period[0]))
    }

    /// Edge number `i` (from 0) of the infinite sequence.
    pub fn edge_at(&self, i: usize) -> Edge {
        match i.checked_sub(self.prefix.len()) {
            None => self.prefix[i],
            Some(j) => self.period[j % self.period.len()],
        }
    }

    pub fn tail_class(&self) -> TailClass {
        TailClass(minimal_rotation(&self.period))
    }

    pub fn label(&self, g: &Graph) -> String {
        let words = |edges: &[Edge]| edges.iter().map(|&e| g.edge_label(e)).collect::<Vec<_>>().join(" ");
        if self.prefix.is_empty() {
            format!("({})^∞", words(&self.period))
        } else {
            format!("{} ({})^∞", words(&self.prefix), words(&self.period))
        }
    }
}

/// Build the normal form of `prefix · period^∞`.
pub fn normalize(g: &Graph, prefix: &[Edge], period: &[Edge]) -> Result<RationalInfinitePath, ChenError> {
    if period.is_empty() {
        return Err(GraphError::EmptyCycle.into());
    }
    let all: Vec<Edge> = prefix.iter().chain(period).copied().collect();
    if let Some(e) = all.iter().find(|e| !g.has_edge(**e)) {
        return Err(GraphError::UnknownEdge(*e).into());
    }
    check_composes(g, g.source(all[0]), &all)?;
    if g.range(*period.last().unwrap()) != g.source(period[0]) {
        return Err(GraphError::NotClosed.into());
    }
    Ok(normalize_unchecked(prefix.to_vec(), period.to_vec()))
}

fn normalize_unchecked(mut prefix: Vec<Edge>, period: Vec<Edge>) -> RationalInfinitePath {
    let mut period = primitive_root(period);
    while let (Some(a), Some(b)) = (prefix.last(), period.last()) {
        if a != b {
            break;
        }
        prefix.pop();
        period.rotate_right(1);
    }
    RationalInfinitePath { prefix, period }
}

/// Shortest `w` with `word = w^k`.
fn primitive_root(word: Vec<Edge>) -> Vec<Edge> {
    let n = word.len();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        if (d..n).all(|i| word[i] == word[i - d]) {
            return word[..d].to_vec();
        }
    }
    word
}

fn minimal_rotation(word: &[Edge]) -> Vec<Edge> {
    (0..word.len()).map(|k| word[k..].iter().chain(&word[..k]).copied().collect::<Vec<_>>()).min().unwrap_or_default()
}

/// A tail-equivalence class of rational paths: the minimal rotation of the
/// primitive period.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TailClass(Vec<Edge>);

impl TailClass {
    pub fn period(&self) -> &[Edge] {
        &self.0
    }

    /// The periodic path `(period)^∞` representing the class.
    pub fn representative(&self) -> RationalInfinitePath {
        RationalInfinitePath { prefix: Vec::new(), period: self.0.clone() }
    }

    pub fn label(&self, g: &Graph) -> String {
        self.0.iter().map(|&e| g.edge_label(e)).collect::<Vec<_>>().join(" ")
    }
}

/// `(τ≤n(p), τ>n(p))`.
pub fn truncate_shift(g: &Graph, p: &RationalInfinitePath, n: usize) -> (Path, RationalInfinitePath) {
    let head: Vec<Edge> = (0..n).map(|i| p.edge_at(i)).collect();
    let tail = if n <= p.prefix.len() {
        normalize_unchecked(p.prefix[n..].to_vec(), p.period.clone())
    } else {
        let mut period = p.period.clone();
        let shift = (n - p.prefix.len()) % period.len();
        period.rotate_left(shift);
        RationalInfinitePath { prefix: Vec::new(), period }
    };
    let head = Path::new(g, p.source(g), head).expect("prefix of a valid infinite path");
    (head, tail)
}

pub fn tail_equivalent(p: &RationalInfinitePath, q: &RationalInfinitePath) -> bool {
    p.tail_class() == q.tail_class()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completeness {
    /// Every class is listed.
    Total,
    /// Only classes with period length up to the bound.
    Truncated,
}

/// Tail classes of rational paths with primitive period length at most
/// `max_period`.
///
/// With pairwise disjoint cycles the classes are exactly the simple cycles and
/// the list is complete whatever the bound. Otherwise primitive closed walks
/// are enumerated up to the bound, `ω`-bundles contributing their first
/// [`OMEGA_WINDOW`] copies.
pub fn enumerate_tail_classes(g: &Graph, max_period: usize) -> (Vec<TailClass>, Completeness) {
    if cycles_pairwise_disjoint(g).is_ok() {
        let (cycles, _) = enumerate_simple_cycles(g);
        let classes = cycles.iter().map(|c| TailClass(minimal_rotation(c.edges()))).collect();
        return (classes, Completeness::Total);
    }
    let mut found = BTreeSet::new();
    let mut walk = Vec::new();
    for start in g.vertices() {
        closed_walks(g, start, start, max_period, &mut walk, &mut |w| {
            let root = primitive_root(w.to_vec());
            if root.len() == w.len() {
                found.insert(TailClass(minimal_rotation(&root)));
            }
        });
    }
    (found.into_iter().collect(), Completeness::Truncated)
}

fn closed_walks(
    g: &Graph,
    start: Vertex,
    at: Vertex,
    budget: usize,
    walk: &mut Vec<Edge>,
    visit: &mut impl FnMut(&[Edge]),
) {
    if budget == 0 {
        return;
    }
    for e in g.out_edges(at, OMEGA_WINDOW) {
        walk.push(e);
        let next = g.range(e);
        if next == start {
            visit(walk);
        }
        closed_walks(g, start, next, budget - 1, walk, visit);
        walk.pop();
    }
}

/// Generators of the Leavitt path algebra acting on path modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Vertex(Vertex),
    Edge(Edge),
    /// The ghost edge `e*`.
    Ghost(Edge),
}

impl Generator {
    pub fn label(&self, g: &Graph) -> String {
        match *self {
            Generator::Vertex(v) => g.name(v).to_string(),
            Generator::Edge(e) => g.edge_label(e),
            Generator::Ghost(e) => format!("{}*", g.edge_label(e)),
        }
    }
}

/// A finite linear combination of rational paths from one tail class.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleElement<F: Field> {
    terms: BTreeMap<RationalInfinitePath, F>,
}

impl<F: Field> ModuleElement<F> {
    pub fn zero() -> Self {
        ModuleElement { terms: BTreeMap::new() }
    }

    pub fn basis(p: RationalInfinitePath) -> Self {
        Self::zero().plus_term(p, F::one()).expect("single term")
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (RationalInfinitePath, F)>) -> Result<Self, ChenError> {
        terms.into_iter().try_fold(Self::zero(), |acc, (p, c)| acc.plus_term(p, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RationalInfinitePath, &F)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero element.
    pub fn tail_class(&self) -> Option<TailClass> {
        self.terms.keys().next().map(RationalInfinitePath::tail_class)
    }

    pub fn coefficient(&self, p: &RationalInfinitePath) -> F {
        self.terms.get(p).cloned().unwrap_or_else(F::zero)
    }

    pub fn plus_term(mut self, p: RationalInfinitePath, c: F) -> Result<Self, ChenError> {
        if c.is_zero() {
            return Ok(self);
        }
        if let Some(class) = self.tail_class() {
            if class != p.tail_class() {
                return Err(ChenError::MixedClasses);
            }
        }
        let sum = self.coefficient(&p) + c;
        if sum.is_zero() {
            self.terms.remove(&p);
        } else {
            self.terms.insert(p, sum);
        }
        Ok(self)
    }

    pub fn plus(&self, other: &Self) -> Result<Self, ChenError> {
        other.terms.iter().try_fold(self.clone(), |acc, (p, c)| acc.plus_term(p.clone(), c.clone()))
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(p, x)| (p.clone(), x.clone() * c.clone())).collect();
        ModuleElement { terms }
    }
}

fn check_generator(g: &Graph, generator: Generator) -> Result<(), ChenError> {
    let known = match generator {
        Generator::Vertex(v) => g.contains(v),
        Generator::Edge(e) | Generator::Ghost(e) => g.has_edge(e),
    };
    known.then_some(()).ok_or(ChenError::UnknownGenerator)
}

/// Action of a generator on one basis path; `None` is zero.
pub fn act_on_path(g: &Graph, generator: Generator, q: &RationalInfinitePath) -> Option<RationalInfinitePath> {
    match generator {
        Generator::Vertex(v) => (q.source(g) == v).then(|| q.clone()),
        Generator::Edge(e) => (g.range(e) == q.source(g)).then(|| {
            let mut prefix = vec![e];
            prefix.extend_from_slice(&q.prefix);
            normalize_unchecked(prefix, q.period.clone())
        }),
        Generator::Ghost(e) => (q.edge_at(0) == e).then(|| truncate_shift(g, q, 1).1),
    }
}

/// Linear extension of the generator action.
pub fn act<F: Field>(g: &Graph, generator: Generator, x: &ModuleElement<F>) -> Result<ModuleElement<F>, ChenError> {
    check_generator(g, generator)?;
    let mut out = ModuleElement::zero();
    for (q, c) in &x.terms {
        if let Some(image) = act_on_path(g, generator, q) {
            out = out.plus_term(image, c.clone())?;
        }
    }
    Ok(out)
}

/// Apply generators right to left, as in the product `a₁ a₂ ⋯ aₖ · x`.
pub fn act_word<F: Field>(g: &Graph, word: &[Generator], x: &ModuleElement<F>) -> Result<ModuleElement<F>, ChenError> {
    word.iter().rev().try_fold(x.clone(), |acc, &a| act(g, a, &acc))
}

/// `e* f x = δ_{e,f} r(e) x`.
pub fn ck1_holds<F: Field>(g: &Graph, e: Edge, f: Edge, x: &ModuleElement<F>) -> Result<bool, ChenError> {
    let lhs = act_word(g, &[Generator::Ghost(e), Generator::Edge(f)], x)?;
    let rhs = if e == f { act(g, Generator::Vertex(g.range(e)), x)? } else { ModuleElement::zero() };
    Ok(lhs == rhs)
}

/// `Σ_{s(e)=v} e e* x = v x` at a regular vertex; `None` elsewhere.
pub fn ck2_holds<F: Field>(g: &Graph, v: Vertex, x: &ModuleElement<F>) -> Result<Option<bool>, ChenError> {
    if !g.contains(v) {
        return Err(ChenError::UnknownGenerator);
    }
    if !g.is_regular(v) {
        return Ok(None);
    }
    let mut sum = ModuleElement::zero();
    for e in g.out_edges(v, 0) {
        sum = sum.plus(&act_word(g, &[Generator::Edge(e), Generator::Ghost(e)], x)?)?;
    }
    Ok(Some(sum == act(g, Generator::Vertex(v), x)?))
}

/// `s(e) e x = e x = e r(e) x`.
pub fn relation1_holds<F: Field>(g: &Graph, e: Edge, x: &ModuleElement<F>) -> Result<bool, ChenError> {
    let ex = act(g, Generator::Edge(e), x)?;
    let left = act_word(g, &[Generator::Vertex(g.source(e)), Generator::Edge(e)], x)?;
    let right = act_word(g, &[Generator::Edge(e), Generator::Vertex(g.range(e))], x)?;
    Ok(left == ex && right == ex)
}

/// `r(e) e* x = e* x = e* s(e) x`.
pub fn relation2_holds<F: Field>(g: &Graph, e: Edge, x: &ModuleElement<F>) -> Result<bool, ChenError> {
    let gx = act(g, Generator::Ghost(e), x)?;
    let left = act_word(g, &[Generator::Vertex(g.range(e)), Generator::Ghost(e)], x)?;
    let right = act_word(g, &[Generator::Ghost(e), Generator::Vertex(g.source(e))], x)?;
    Ok(left == gx && right == gx)
}

/// All edges of `g`, finite bundles in full and `ω`-bundles through the
/// first `omega_copies` copies.
pub fn edges_windowed(g: &Graph, omega_copies: u64) -> Vec<Edge> {
    g.vertices().flat_map(|v| g.out_edges(v, omega_copies)).collect()
}
