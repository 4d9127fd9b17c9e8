//! Finite generalized Reedy categories and Set-valued presheaf calculus.
//!
//! Everything here is exhaustively checkable: categories are explicit
//! composition tables, diagrams are finite sets with explicit action maps,
//! and the structural notions (degree functions, plus/minus factorizations,
//! crossed groups, latching/matching objects, skeleta, normal monomorphisms)
//! come with validators that either pass or produce a concrete witness.

pub mod crossed;
pub mod diagram;
pub mod error;
pub mod ez;
pub mod fincat;
pub mod generators;
pub mod group;
pub mod monoidal;
pub mod reedy;
pub mod rng;
pub mod suite;

pub use crossed::{CrossedGroup, TotalCategory};
pub use diagram::{ConeResult, CoconeResult, DiagramMap, SetDiagram};
pub use error::Error;
pub use ez::{EzStructure, StandardDecomposition};
pub use fincat::{FinCategory, FunctorData, MorId, ObjId, WideSubcategory};
pub use group::{EquivariantSet, Group};
pub use reedy::{DegreeSlice, GeneralizedReedyStructure};
pub use rng::SplitMix64;
