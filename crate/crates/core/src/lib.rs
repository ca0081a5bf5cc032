//! Random Poisson and uniform polygons in planar convex bodies.
//!
//! - [`geometry`]: bodies as strictly convex polygons, caps, the chord function.
//! - [`measure`]: the affine invariant measure of directions, wet parts,
//!   equal-measure partitions, γ-sequences and the mixing integral.
//! - [`process`]: point processes, hulls, the functionals `N`, `A` and their
//!   angular sector decomposition.
//! - [`experiments`]: Monte-Carlo trial runner and statistical reports.

pub mod error;
pub mod experiments;
pub mod geometry;
pub mod measure;
pub mod numeric;
pub mod process;

pub use error::{Error, Result};

/// Library version, embedded in every report header.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
