pub mod dcb;
pub mod genexp;
pub mod ibar;
pub mod piece;

pub use dcb::{dcb_plain, DcbPiece, DcbSolver};
pub use ibar::IBar;
