//! Scalar numerics shared by the geometry and measure code.

pub mod quadrature;
pub mod roots;

pub use quadrature::{adaptive_simpson, adaptive_simpson_with_breaks, Integral};
pub use roots::{bisect, solve_increasing, Root};
