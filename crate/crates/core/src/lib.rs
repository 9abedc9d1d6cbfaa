//! Finite-model workbench for overlap algebras, oo-lattices and formal
//! topologies: represents the structures on finite carriers, verifies their
//! axioms and derived laws, searches exhaustively for overlap relations and
//! adjoints, and machine-checks the classical equivalence theorems on small
//! instances.

pub mod atoms;
pub mod constructions;
pub mod corpus;
pub mod error;
pub mod lattice;
pub mod morphism;
pub mod overlap;
pub mod subset;
pub mod topology;

pub use error::{Budget, Error, Result};
pub use lattice::{BaseFamily, FiniteLattice};
pub use morphism::{AdjointQuadruple, FiniteRelation, LatticeMap};
pub use overlap::{AxiomReport, OAlgebra, OverlapRelation, Verdict};
pub use subset::ElementSubset;
pub use topology::{CoverPresentation, FTFrame};
