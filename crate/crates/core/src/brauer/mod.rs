//! Connecting maps, image bounds and relative Brauer groups.

pub mod algebras;
pub mod alpha;
pub mod image;
pub mod invariants;
pub mod nondiagonal;
pub mod report;

pub use algebras::{AlgebraDescriptor, CyclicAlgebra, SymbolAlgebra};
pub use alpha::{alpha, alpha_quadratic, alpha_rep};
pub use image::{Certainty, ImageDecision};
pub use invariants::{local_invariants, InvariantTable, RationalInvariants, Third};
pub use nondiagonal::{relative_brauer_nondiagonal, twist_class, CupProduct, TwistData};
pub use report::{run, BaseField, BrauerReport, JobInput};
