//! Row graphs: finitely many infinite rays `v_{r,1} → v_{r,2} → ⋯`, where
//! every vertex of row `r` may also emit one edge to the first vertex of an
//! earlier row. The pyramid graphs are the chains of such rows.
//!
//! These graphs are infinite, so everything here is decided at row level: a
//! hereditary saturated set is a union of whole rows closed under the
//! up-target map (heredity pulls in the target row, saturation then fills any
//! tail of a row back to its first vertex).

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::{Graph, RawGraph};
use crate::lattice::FinitePoset;
use crate::rep_type::{Cardinality, FactorDescriptor, FactorKind, Witness};
use crate::xnat::XNat;

pub type RowSet = BTreeSet<usize>;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RowGraphError {
    #[error("duplicate row `{0}`")]
    DuplicateRow(String),
    #[error("row `{row}` points at `{target}`, which is not an earlier row")]
    TargetNotEarlier { row: String, target: String },
    #[error("a pyramid needs at least one layer")]
    NoLayers,
    #[error("truncation needs at least one column")]
    NoColumns,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowGraph {
    rows: Vec<String>,
    up: Vec<Option<usize>>,
}

impl RowGraph {
    /// Rows in order, each with an optional up-target naming an earlier row.
    pub fn new<S: AsRef<str>>(rows: &[(S, Option<S>)]) -> Result<RowGraph, RowGraphError> {
        let mut names: Vec<String> = Vec::new();
        let mut up = Vec::new();
        for (row, target) in rows {
            let row = row.as_ref();
            if names.iter().any(|n| n == row) {
                return Err(RowGraphError::DuplicateRow(row.to_string()));
            }
            let target = match target {
                None => None,
                Some(t) => Some(names.iter().position(|n| n == t.as_ref()).ok_or_else(|| {
                    RowGraphError::TargetNotEarlier { row: row.to_string(), target: t.as_ref().to_string() }
                })?),
            };
            names.push(row.to_string());
            up.push(target);
        }
        Ok(RowGraph { rows: names, up })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn name(&self, r: usize) -> &str {
        &self.rows[r]
    }

    pub fn names(&self) -> &[String] {
        &self.rows
    }

    pub fn up_target(&self, r: usize) -> Option<usize> {
        self.up[r]
    }

    pub fn row(&self, name: &str) -> Option<usize> {
        self.rows.iter().position(|n| n == name)
    }

    /// `r` together with the rows its up-targets lead to.
    pub fn up_chain(&self, r: usize) -> RowSet {
        let mut out = RowSet::new();
        let mut at = Some(r);
        while let Some(x) = at {
            out.insert(x);
            at = self.up[x];
        }
        out
    }

    pub fn format_rows(&self, set: &RowSet) -> String {
        let names: Vec<&str> = set.iter().map(|&r| self.name(r)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// The pyramid with `n` layers: rows `r1..rn`, row `r` pointing at `r−1`.
pub fn pyramid(n: usize) -> Result<RowGraph, RowGraphError> {
    if n < 1 {
        return Err(RowGraphError::NoLayers);
    }
    let rows: Vec<(String, Option<String>)> =
        (1..=n).map(|r| (format!("r{r}"), (r > 1).then(|| format!("r{}", r - 1)))).collect();
    RowGraph::new(&rows)
}

fn row_set_order(a: &RowSet, b: &RowSet) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Every hereditary saturated set, as the set of its rows, sorted by size then
/// lexicographically.
pub fn row_hereditary_saturated(rg: &RowGraph) -> Vec<RowSet> {
    let mut seen = BTreeSet::from([RowSet::new()]);
    let mut queue = VecDeque::from([RowSet::new()]);
    while let Some(h) = queue.pop_front() {
        for r in (0..rg.len()).filter(|r| !h.contains(r)) {
            let mut next = h.clone();
            next.extend(rg.up_chain(r));
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<RowSet> = seen.into_iter().collect();
    out.sort_by(row_set_order);
    out
}

/// Row-level admissible pairs ordered by inclusion. Row graphs are
/// row-finite, so every `S` component is empty.
#[derive(Clone, Debug)]
pub struct RowLattice {
    pub elements: Vec<RowSet>,
    pub poset: FinitePoset,
}

pub fn row_ideal_lattice(rg: &RowGraph) -> RowLattice {
    let elements = row_hereditary_saturated(rg);
    let poset = FinitePoset::from_relation(elements.len(), |a, b| elements[a].is_subset(&elements[b]));
    RowLattice { elements, poset }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowStage {
    /// Rows consumed at this stage, each a single line-point class.
    pub rows: Vec<usize>,
    /// Rows consumed so far.
    pub consumed: RowSet,
    pub factors: Vec<FactorDescriptor>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowChain {
    pub stages: Vec<RowStage>,
}

impl RowChain {
    pub fn class_counts(&self) -> Vec<usize> {
        self.stages.iter().map(|s| s.rows.len()).collect()
    }

    pub fn census(&self) -> Cardinality {
        Cardinality::Finite(self.class_counts().iter().sum())
    }
}

/// Each stage consumes the rows whose up-target is absent or already
/// consumed: in the quotient those rows are bare rays, so all their vertices
/// are line points with intersecting trees, and infinitely many paths end on
/// every ray vertex.
pub fn row_socular_chain(rg: &RowGraph) -> RowChain {
    let mut consumed = RowSet::new();
    let mut stages = Vec::new();
    while consumed.len() < rg.len() {
        let rows: Vec<usize> = (0..rg.len())
            .filter(|r| !consumed.contains(r) && rg.up[*r].is_none_or(|t| consumed.contains(&t)))
            .collect();
        assert!(!rows.is_empty(), "up-targets point at earlier rows, so some row is always free");
        consumed.extend(&rows);
        let factors = rows
            .iter()
            .map(|&r| FactorDescriptor { kind: FactorKind::MatrixOverK, size: XNat::Omega, witness: Witness::Row(r) })
            .collect();
        stages.push(RowStage { rows, consumed: consumed.clone(), factors });
    }
    RowChain { stages }
}

/// The graded chain `(∅,∅) < (H₁,∅) < ⋯` at row level: cumulative consumed
/// rows of the socular chain, starting from the empty set.
pub fn row_admissible_chain(rg: &RowGraph) -> Vec<RowSet> {
    let mut chain = vec![RowSet::new()];
    chain.extend(row_socular_chain(rg).stages.into_iter().map(|s| s.consumed));
    chain
}

/// The finite graph keeping the first `columns` vertices of every row.
///
/// Vertex `{row}_{i}` for `i = 1..columns`; bundle `{row}_{i}_next` along the
/// ray and, when the row has an up-target `t`, bundle `{row}_{i}_up` from every
/// vertex of the row (the last one included) to `{t}_1`.
pub fn truncate(rg: &RowGraph, columns: usize) -> Result<Graph, RowGraphError> {
    if columns < 1 {
        return Err(RowGraphError::NoColumns);
    }
    let vertex = |r: usize, i: usize| format!("{}_{}", rg.name(r), i);
    let mut raw = RawGraph::new();
    for r in 0..rg.len() {
        raw = raw.vertices((1..=columns).map(|i| vertex(r, i)));
    }
    for r in 0..rg.len() {
        for i in 1..=columns {
            if i < columns {
                raw = raw.edge(&format!("{}_next", vertex(r, i)), &vertex(r, i), &vertex(r, i + 1));
            }
            if let Some(t) = rg.up[r] {
                raw = raw.edge(&format!("{}_up", vertex(r, i)), &vertex(r, i), &vertex(t, 1));
            }
        }
    }
    Ok(raw.build().expect("truncation of a valid row graph is valid"))
}
