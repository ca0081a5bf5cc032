//! Point sets in a body: triangulations, uniform sampling, the Poisson and
//! uniform models.

use super::rng::SeedRecord;
use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Point};
use rand::Rng;
use rand_distr::{Binomial, Distribution, Poisson};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Triangles with a cumulative-area table for area-proportional selection.
#[derive(Clone, Debug)]
pub struct Triangulation {
    triangles: Vec<[Point; 3]>,
    cumulative: Vec<f64>,
}

impl Triangulation {
    pub fn new(triangles: Vec<[Point; 3]>) -> Self {
        let mut cumulative = Vec::with_capacity(triangles.len());
        let mut acc = 0.0;
        for t in &triangles {
            acc += 0.5 * (t[1] - t[0]).cross(t[2] - t[0]).abs();
            cumulative.push(acc);
        }
        Triangulation { triangles, cumulative }
    }

    /// Fan from vertex 0.
    pub fn fan(body: &ConvexBody) -> Self {
        let v = body.vertices();
        Triangulation::new((1..v.len() - 1).map(|i| [v[0], v[i], v[i + 1]]).collect())
    }

    pub fn area(&self) -> f64 {
        self.cumulative.last().copied().unwrap_or(0.0)
    }

    pub fn triangles(&self) -> &[[Point; 3]] {
        &self.triangles
    }

    /// A uniform point: triangle by area, then the reflected unit-square map.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        let u = rng.random::<f64>() * self.area();
        let i = self.cumulative.partition_point(|&c| c <= u).min(self.triangles.len() - 1);
        let [a, b, c] = self.triangles[i];
        let (mut r, mut s) = (rng.random::<f64>(), rng.random::<f64>());
        if r + s > 1.0 {
            r = 1.0 - r;
            s = 1.0 - s;
        }
        a + (b - a) * r + (c - a) * s
    }

    pub fn sample_many<R: Rng + ?Sized>(&self, count: u64, rng: &mut R, out: &mut Vec<Point>) {
        out.reserve(count as usize);
        for _ in 0..count {
            out.push(self.sample(rng));
        }
    }
}

/// Points of one trial together with the record that regenerates them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    pub points: Vec<Point>,
    pub body_id: u64,
    pub seed: SeedRecord,
}

/// How many points fall in each of several disjoint regions covering `K`.
pub trait PointModel: Send + Sync {
    /// Name with parameters, e.g. `poisson` or `uniform(n=10000)`.
    fn label(&self) -> String;

    /// Point counts for regions of the given areas (which sum to `area(K)`).
    fn split_counts(&self, areas: &[f64], rng: &mut dyn rand::RngCore) -> Vec<u64>;

    /// Expected total count for a body of this area.
    fn expected_count(&self, area: f64) -> f64;
}

/// Unit-intensity Poisson process.
#[derive(Clone, Copy, Debug, Default)]
pub struct PoissonModel;

impl PointModel for PoissonModel {
    fn label(&self) -> String {
        "poisson".into()
    }

    fn split_counts(&self, areas: &[f64], rng: &mut dyn rand::RngCore) -> Vec<u64> {
        areas
            .iter()
            .map(|&a| if a > 0.0 { Poisson::new(a).expect("positive mean").sample(rng) as u64 } else { 0 })
            .collect()
    }

    fn expected_count(&self, area: f64) -> f64 {
        area
    }
}

/// `n` i.i.d. uniform points.
#[derive(Clone, Copy, Debug)]
pub struct UniformModel {
    pub n: u64,
}

impl PointModel for UniformModel {
    fn label(&self) -> String {
        format!("uniform(n={})", self.n)
    }

    /// Multinomial split by successive conditional binomials.
    fn split_counts(&self, areas: &[f64], rng: &mut dyn rand::RngCore) -> Vec<u64> {
        let mut left = self.n;
        let mut rest: f64 = areas.iter().sum();
        let mut out = Vec::with_capacity(areas.len());
        for (i, &a) in areas.iter().enumerate() {
            let k = if i + 1 == areas.len() || left == 0 {
                left
            } else {
                let p = (a / rest).clamp(0.0, 1.0);
                Binomial::new(left, p).expect("valid binomial").sample(rng)
            };
            out.push(k);
            left -= k;
            rest -= a;
        }
        out
    }

    fn expected_count(&self, _area: f64) -> f64 {
        self.n as f64
    }
}

type ModelFactory = fn(Option<u64>) -> Result<Box<dyn PointModel>>;

/// Point models addressable by name.
pub struct ModelRegistry {
    factories: BTreeMap<&'static str, ModelFactory>,
}

impl Default for ModelRegistry {
    fn default() -> Self {
        let mut factories: BTreeMap<&'static str, ModelFactory> = BTreeMap::new();
        factories.insert("poisson", |n| match n {
            None => Ok(Box::new(PoissonModel)),
            Some(_) => Err(Error::param("n", "the poisson model takes no point count")),
        });
        factories.insert("uniform", |n| match n {
            Some(n) => Ok(Box::new(UniformModel { n })),
            None => Err(Error::param("n", "the uniform model needs a point count")),
        });
        ModelRegistry { factories }
    }
}

impl ModelRegistry {
    pub fn names(&self) -> Vec<&'static str> {
        self.factories.keys().copied().collect()
    }

    pub fn register(&mut self, name: &'static str, factory: ModelFactory) {
        self.factories.insert(name, factory);
    }

    pub fn build(&self, name: &str, n: Option<u64>) -> Result<Box<dyn PointModel>> {
        let f = self
            .factories
            .get(name)
            .ok_or_else(|| Error::Unknown { registry: "point model", name: name.to_string() })?;
        f(n)
    }
}

/// Build a model from the default registry.
pub fn make_model(name: &str, n: Option<u64>) -> Result<Box<dyn PointModel>> {
    ModelRegistry::default().build(name, n)
}

/// Poisson(area) many uniform points in `K`.
pub fn sample_poisson(body: &ConvexBody, seed: SeedRecord) -> PointSet {
    sample_model(body, &PoissonModel, seed)
}

/// Exactly `n` uniform points in `K`.
pub fn sample_uniform(body: &ConvexBody, n: u64, seed: SeedRecord) -> PointSet {
    sample_model(body, &UniformModel { n }, seed)
}

pub fn sample_model(body: &ConvexBody, model: &dyn PointModel, seed: SeedRecord) -> PointSet {
    let mut rng = seed.rng();
    let tri = Triangulation::fan(body);
    let count = model.split_counts(&[body.area()], &mut rng)[0];
    let mut points = Vec::new();
    tri.sample_many(count, &mut rng, &mut points);
    PointSet { points, body_id: body.id(), seed }
}
