//! Point processes in a body, the random polygon and its functionals.

pub mod hull;
pub mod points;
pub mod rng;
pub mod sampler;
pub mod sector;

pub use hull::{functionals, hull, hull_support_vertex, HullResult};
pub use points::{
    make_model, sample_model, sample_poisson, sample_uniform, ModelRegistry, PointModel, PointSet, PoissonModel,
    Triangulation, UniformModel,
};
pub use rng::{splitmix64, SeedRecord};
pub use sampler::{make_sampler, AnnulusSampler, FullSampler, HullSampler, SamplerRegistry};
pub use sector::{sector_functionals, SectorValues};
