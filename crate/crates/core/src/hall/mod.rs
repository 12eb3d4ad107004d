//! Generic Hall algebra of a Dynkin quiver.

pub mod engine;

pub use engine::{Engine, Op, QVec};
pub mod interp;
pub mod plain;

pub use interp::{interpolate_hall_polynomial, HallPolynomial};
pub use plain::{HallAlgebra, PlainHallElt};
