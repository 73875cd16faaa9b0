//! Leavitt path algebra structure theory over directed graphs: hereditary
//! saturated sets, graded ideals, the socular chain, representation type
//! and Chen simple modules.
//!
//! Graphs are finite vertex sets with edge bundles whose multiplicity may be
//! `ω`, so infinite emitters are representable. The infinite pyramid graphs
//! are handled separately in [`row_graphs`].

pub mod chen;
pub mod cycles;
pub mod field;
pub mod graph;
pub mod hereditary;
pub mod lattice;
pub mod random;
pub mod rep_type;
pub mod row_graphs;
pub mod structure;
pub mod xnat;

pub use graph::{Bundle, BundleIx, Cycle, Edge, Graph, GraphError, Path, RawGraph, Vertex, VertexSet, Violation};
pub use hereditary::{AdmissiblePair, Origin, Quotient, StructureError, DEFAULT_LATTICE_CAP};
pub use lattice::{ideal_lattice, FinitePoset, IdealLattice};
pub use rep_type::{classify_rep_type, socular_chain, Cardinality, Census, Evidence, FieldCard, SocularChain};
pub use row_graphs::{pyramid, RowGraph};
pub use xnat::XNat;
