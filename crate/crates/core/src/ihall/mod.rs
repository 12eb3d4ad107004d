//! Generic i-Hall algebras of Dynkin i-quivers.

pub mod algebra;
pub mod elt;
pub mod presentation;

pub use algebra::{diamond_exp2, k_commute, IHallAlgebra};
pub use presentation::{generator_image, verify_presentation, GenKind};
pub use elt::{IHallElt, IKey, Variant};
