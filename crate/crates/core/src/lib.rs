//! Exact Deligne–Lusztig characters and spherical periods for small
//! general linear and unitary groups over finite fields.

pub mod error;
pub mod ffield;
pub mod green;
pub mod groups;
pub mod tori;
pub mod dlchar;
pub mod periods;
pub mod formulas;
pub mod oracle;
pub mod verify;

pub use error::{Error, Result};
