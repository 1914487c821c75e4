//! Finite-group toolkit around enhanced power graphs.
//!
//! The crate builds small finite groups as explicit Cayley tables, computes
//! their enhanced power graphs (vertices are the non-identity elements, with
//! an edge where two elements generate a cyclic subgroup), extracts the
//! subgroup of universal vertices by independent methods, and mechanically
//! checks the structural characterizations that govern when that subgroup is
//! nontrivial and when the graph has diameter two.
//!
//! Modules:
//! * [`group`] - the group kernel: construction, subgroup machinery, Sylow
//!   theory, quotients, solvability, isomorphism testing.
//! * [`constructions`] - named families (cyclic, dihedral, dicyclic,
//!   elementary abelian, symmetric/alternating), direct products, and 2x2
//!   matrix groups over small fields.
//! * [`epgraph`] - the enhanced power graph, universal vertices, diameter,
//!   DOT export.
//! * [`structure`] - the characterization predicates and per-group
//!   verification reports.
//! * [`catalog`] - corpus generation, isomorphism dedupe, (de)serialization
//!   of groups and reports.
//! * [`selftest`] - the acceptance checks behind the `selftest` CLI verb.

#![forbid(unsafe_code)]

pub mod arith;
pub mod bitset;
pub mod catalog;
pub mod constructions;
pub mod epgraph;
pub mod group;
pub mod selftest;
pub mod structure;

pub use bitset::ElemSet;
pub use epgraph::{Diameter, EpGraph, KMethod, KResult};
pub use group::{Group, GroupError};
