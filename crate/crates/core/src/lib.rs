//! Hall algebras and i-Hall algebras of Dynkin quivers over exact Laurent coefficients.

pub mod bar;
pub mod ctx;
pub mod error;
pub mod fp;
pub mod hall;
pub mod io;
pub mod ihall;
pub mod int;
pub mod laurent;
pub mod lin;
pub mod lpoly;
pub mod modfq;
pub mod quiver;
pub mod report;
pub mod symmetry;
pub mod verify;

pub use ctx::Ctx;
pub use error::{Error, Result};
