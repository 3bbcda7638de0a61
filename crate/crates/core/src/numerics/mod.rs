//! Quadrature, special functions and root finding.

pub mod circle;
pub mod disc;
pub mod gauss;
pub mod radial;
pub mod root;
pub mod special;

pub use circle::{CircleMean, CircleRule};
pub use disc::{BergmanWeight, DiscIntegral, DiscRule, Polar};
pub use gauss::{adaptive_kronrod, GaussLegendre};
pub use radial::{RadialIntegral, RadialRule};
pub use root::{bisect_monotone, bisect_monotone_with, bracket_decreasing};
pub use special::{binomial, ln_gamma, poisson_sharp_constant, rising_binomial};
