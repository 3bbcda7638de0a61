//! Variable-exponent Hardy and Bergman spaces on the unit disc.

pub mod analytic;
pub mod carleson;
pub mod equivalence;
pub mod error;
pub mod exponent;
pub mod numerics;
pub mod report;
pub mod spaces;
pub mod verify;

pub use error::{Error, Result};
