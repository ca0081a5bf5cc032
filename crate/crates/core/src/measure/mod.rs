//! The affine invariant measure and the constructions built on it.

pub mod dependence;
pub mod gamma;
pub mod profile;
pub mod wet;

pub use dependence::{dependence_bound, dependence_bound_with_grid, DependenceBound};
pub use gamma::{gamma_sequence, unit_cap_overlap};
pub use profile::{
    balanced_axis, kink_angles, mu_density, mu_distance, mu_interval, partition_equal_mu, AngularPartition,
    MeasureProfile,
};
pub use wet::{dry_part, dry_part_adaptive, wet_area, wet_area_with_grid};
