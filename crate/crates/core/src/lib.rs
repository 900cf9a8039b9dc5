//! Computational kernel for finite reduced crossed complexes.
//!
//! Everything is exhaustively finite: groups are Cayley tables, morphisms are
//! index maps, and every axiom or proposition offered by the API is checked by
//! scanning elements rather than assumed. The intended scale is "desk-sized"
//! instances (group orders in the tens), which keeps every check exact.
//!
//! Module map:
//! - [`group`], [`hom`], [`action`]: finite groups, homomorphisms, right actions
//! - [`complex`]: reduced crossed complexes and their morphisms
//! - [`model`]: homotopy groups, fibrations, weak equivalences
//! - [`reshape`]: skeleton / truncation / coskeleton / cotruncation
//! - [`homotopy`]: pointed and free homotopies between morphisms
//! - [`pushout`]: fibered coproducts, pushouts below a top map, diagonals
//! - [`butterfly`]: butterflies, folding, the morphism groupoid and pi0

pub mod action;
pub mod butterfly;
pub mod caps;
pub mod complex;
pub mod group;
pub mod hom;
pub mod homotopy;
pub mod instances;
pub mod model;
pub mod pushout;
pub mod reshape;

pub use action::RightAction;
pub use caps::Caps;
pub use complex::{AxiomViolation, ComplexError, ComplexMorphism, CrossedComplex};
pub use group::{FinGroup, GroupError, Subgroup};
pub use hom::GroupHom;
