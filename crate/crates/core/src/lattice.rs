//! Finite posets and the lattice of graded ideals.

use fixedbitset::FixedBitSet;

use crate::cycles::is_acyclic;
use crate::graph::Graph;
use crate::hereditary::{breaking_vertices_unchecked, enumerate_hereditary_saturated, AdmissiblePair, StructureError};
use crate::structure::condition_k;

/// A finite poset on `0..n`, stored as up-sets and down-sets.
#[derive(Clone, Debug)]
pub struct FinitePoset {
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
}

impl FinitePoset {
    pub fn from_relation(n: usize, leq: impl Fn(usize, usize) -> bool) -> FinitePoset {
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in up.iter_mut().enumerate() {
            row.extend((0..n).filter(|&b| leq(a, b)));
        }
        for (a, row) in up.iter().enumerate() {
            for b in row.ones() {
                down[b].insert(a);
            }
        }
        FinitePoset { up, down }
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    /// Reflexive, antisymmetric and transitive.
    pub fn is_partial_order(&self) -> bool {
        let n = self.len();
        for a in 0..n {
            if !self.leq(a, a) {
                return false;
            }
            for b in self.up[a].ones() {
                if b != a && self.leq(b, a) {
                    return false;
                }
                if !self.up[b].is_subset(&self.up[a]) {
                    return false;
                }
            }
        }
        true
    }

    /// Elements covered by `a`.
    pub fn lower_covers(&self, a: usize) -> Vec<usize> {
        let mut below = self.down[a].clone();
        below.set(a, false);
        below
            .ones()
            .filter(|&b| {
                let mut between = self.up[b].clone();
                between.intersect_with(&below);
                between.count_ones(..) == 1
            })
            .collect()
    }

    /// All covering pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> =
            (0..self.len()).flat_map(|a| self.lower_covers(a).into_iter().map(move |b| (b, a))).collect();
        out.sort();
        out
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&a| self.up[a].count_ones(..) == self.len())
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&a| self.down[a].count_ones(..) == self.len())
    }

    /// Least upper bound, if it exists. The least upper bound `l` is the upper
    /// bound whose own up-set is the whole set of upper bounds.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let mut ub = self.up[a].clone();
        ub.intersect_with(&self.up[b]);
        let size = ub.count_ones(..);
        ub.ones().find(|&l| self.up[l].count_ones(..) == size)
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let mut lb = self.down[a].clone();
        lb.intersect_with(&self.down[b]);
        let size = lb.count_ones(..);
        lb.ones().find(|&l| self.down[l].count_ones(..) == size)
    }

    pub fn is_lattice(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (a..n).all(|b| self.join(a, b).is_some() && self.meet(a, b).is_some()))
    }

    /// Elements covering exactly one element.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.lower_covers(a).len() == 1).collect()
    }

    /// Length, in covering steps, of a longest chain.
    pub fn max_chain_length(&self) -> usize {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&a| self.down[a].count_ones(..));
        let mut best = vec![0usize; self.len()];
        for &a in &order {
            best[a] = self.lower_covers(a).into_iter().map(|b| best[b] + 1).max().unwrap_or(0);
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// Distributivity of a finite lattice: the map sending `a` to the
    /// join-irreducibles below it must turn joins into unions. `false` if the
    /// poset is not a lattice.
    pub fn is_distributive(&self) -> bool {
        let n = self.len();
        let mut ji = FixedBitSet::with_capacity(n);
        for j in self.join_irreducibles() {
            ji.insert(j);
        }
        let below = |a: usize| {
            let mut s = self.down[a].clone();
            s.intersect_with(&ji);
            s
        };
        for a in 0..n {
            for b in a..n {
                let Some(j) = self.join(a, b) else { return false };
                if self.meet(a, b).is_none() {
                    return false;
                }
                let mut union = below(a);
                union.union_with(&below(b));
                if union != below(j) {
                    return false;
                }
            }
        }
        true
    }
}

/// All admissible pairs of a graph with the ideal containment order.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    /// In canonical listing order; index 0 is `(∅, ∅)`.
    pub elements: Vec<AdmissiblePair>,
    pub poset: FinitePoset,
    /// `false` when the graph has cycles and fails Condition (K): then not
    /// every ideal is graded and the lattice only covers the graded ones.
    pub all_ideals_graded: bool,
}

impl IdealLattice {
    pub fn join_irreducibles(&self) -> Vec<&AdmissiblePair> {
        self.poset.join_irreducibles().into_iter().map(|i| &self.elements[i]).collect()
    }

    pub fn index_of(&self, pair: &AdmissiblePair) -> Option<usize> {
        self.elements.binary_search(pair).ok()
    }
}

/// Enumerate every admissible pair `(H, S)` with `S ⊆ B_H` and order them.
pub fn ideal_lattice(g: &Graph, cap: usize) -> Result<IdealLattice, StructureError> {
    let mut elements = Vec::new();
    for h in enumerate_hereditary_saturated(g, cap)? {
        let breaking: Vec<_> = breaking_vertices_unchecked(g, &h).into_iter().collect();
        if breaking.len() >= usize::BITS as usize - 1 || elements.len() + (1usize << breaking.len()) > cap {
            return Err(StructureError::LatticeTooLarge { cap });
        }
        for mask in 0usize..(1 << breaking.len()) {
            let s = breaking.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
            elements.push(AdmissiblePair { h: h.clone(), s });
        }
    }
    elements.sort();
    let poset = FinitePoset::from_relation(elements.len(), |a, b| elements[a].leq(&elements[b]));
    let all_ideals_graded = is_acyclic(g) || condition_k(g);
    Ok(IdealLattice { elements, poset, all_ideals_graded })
}
