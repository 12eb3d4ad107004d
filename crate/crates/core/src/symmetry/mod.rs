pub mod braid;
pub mod fixedq;
pub mod fourier;
pub mod gamma;
pub mod pbw;

pub use gamma::Reflection;
