//! Presheaf topoi over finite categories, computed exhaustively.

pub mod action;
pub mod admissible;
pub mod audit;
pub mod bits;
pub mod error;
pub mod fincat;
pub mod fixtures;
pub mod ideals;
pub mod omega;
pub mod presheaf;
pub mod workspace;

pub use bits::Bits;
pub use error::{Caps, Error, Result};
pub use fincat::{CategoryDescription, FinCat, Mor, Obj, PullbackSquare};
