//! Strategies producing one random polygon per trial.
//!
//! `full` materialises every point. `annulus` exploits that deep points
//! rarely matter: with `D` the dry part at a level `t` (every cap of area `t`
//! removed), only points in the ring `K ∖ D` are drawn first. If their hull
//! already contains `D`, points inside `D` cannot change the hull and are only
//! counted; otherwise they are drawn as well. Both strategies produce the same
//! law of `(Π, point count)`.

use super::hull::HullResult;
use super::points::{PointModel, Triangulation};
use super::rng::SeedRecord;
use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Point};
use crate::measure::dry_part_adaptive;
use std::collections::BTreeMap;

/// Draws `Π_K` for one trial.
pub trait HullSampler: Send + Sync {
    fn name(&self) -> &'static str;
    fn body(&self) -> &ConvexBody;
    fn sample(&self, model: &dyn PointModel, seed: SeedRecord) -> HullResult;
}

pub struct FullSampler {
    body: ConvexBody,
    fan: Triangulation,
}

impl FullSampler {
    pub fn new(body: &ConvexBody) -> Self {
        FullSampler { body: body.clone(), fan: Triangulation::fan(body) }
    }
}

impl HullSampler for FullSampler {
    fn name(&self) -> &'static str {
        "full"
    }

    fn body(&self) -> &ConvexBody {
        &self.body
    }

    fn sample(&self, model: &dyn PointModel, seed: SeedRecord) -> HullResult {
        let mut rng = seed.rng();
        let count = model.split_counts(&[self.body.area()], &mut rng)[0];
        let mut pts = Vec::new();
        self.fan.sample_many(count, &mut rng, &mut pts);
        HullResult::from_points(&pts, self.body.area(), count)
    }
}

/// Default dry-part level of the annulus sampler.
pub const ANNULUS_LEVEL: f64 = 28.0;
const ANNULUS_MAX_STEP: f64 = std::f64::consts::PI / 1024.0;
const ANNULUS_SWEEP: f64 = 2.0;

pub struct AnnulusSampler {
    body: ConvexBody,
    inner: ConvexBody,
    ring: Triangulation,
    inner_fan: Triangulation,
    areas: [f64; 2],
}

impl AnnulusSampler {
    /// `None` when the body is too small for a non-empty dry part at `level`.
    pub fn new(body: &ConvexBody, level: f64) -> Option<Self> {
        if body.area() <= 8.0 * level {
            return None;
        }
        let dry = dry_part_adaptive(body, level, ANNULUS_MAX_STEP, ANNULUS_SWEEP).ok()?;
        let inner = ConvexBody::from_ccw_cleaned(&dry)?;
        let ring = Triangulation::new(ring_triangles(body, &inner));
        let inner_fan = Triangulation::fan(&inner);
        let areas = [body.area() - inner.area(), inner.area()];
        Some(AnnulusSampler { body: body.clone(), inner, ring, inner_fan, areas })
    }

    pub fn inner(&self) -> &ConvexBody {
        &self.inner
    }

    pub fn ring(&self) -> &Triangulation {
        &self.ring
    }

    /// Whether the hull contains the inner polygon: every hull edge has the
    /// inner polygon's support vertex in its direction on its left.
    fn covers_inner(&self, h: &HullResult) -> bool {
        if h.degenerate {
            return false;
        }
        (0..h.len()).all(|k| {
            let u = h.vertex(k);
            let w = h.vertex(k + 1);
            let s = self.inner.support_vertex(h.edge_angles[k]);
            (w - u).cross(s - u) >= 0.0
        })
    }
}

impl HullSampler for AnnulusSampler {
    fn name(&self) -> &'static str {
        "annulus"
    }

    fn body(&self) -> &ConvexBody {
        &self.body
    }

    fn sample(&self, model: &dyn PointModel, seed: SeedRecord) -> HullResult {
        let mut rng = seed.rng();
        let counts = model.split_counts(&self.areas, &mut rng);
        let total = counts[0] + counts[1];
        let mut pts = Vec::new();
        self.ring.sample_many(counts[0], &mut rng, &mut pts);
        let h = HullResult::from_points(&pts, self.body.area(), total);
        if self.covers_inner(&h) || counts[1] == 0 {
            return h;
        }
        self.inner_fan.sample_many(counts[1], &mut rng, &mut pts);
        HullResult::from_points(&pts, self.body.area(), total)
    }
}

/// Triangulate `K ∖ D` for convex `D ⊂ K` by sweeping both boundaries in edge
/// angle order; consecutive bridges join support points of a common
/// direction.
pub fn ring_triangles(outer: &ConvexBody, inner: &ConvexBody) -> Vec<[Point; 3]> {
    let (ea, eb) = (outer.edge_angles(), inner.edge_angles());
    let (mut i, mut j) = (0usize, 0usize);
    let mut out = Vec::with_capacity(ea.len() + eb.len());
    while i < ea.len() || j < eb.len() {
        let take_outer = j == eb.len() || (i < ea.len() && ea[i] <= eb[j]);
        if take_outer {
            out.push([outer.vertex(i), outer.vertex(i + 1), inner.vertex(j)]);
            i += 1;
        } else {
            out.push([inner.vertex(j), outer.vertex(i), inner.vertex(j + 1)]);
            j += 1;
        }
    }
    out
}

type SamplerFactory = fn(&ConvexBody) -> Box<dyn HullSampler>;

/// Hull samplers addressable by name.
pub struct SamplerRegistry {
    factories: BTreeMap<&'static str, SamplerFactory>,
}

impl Default for SamplerRegistry {
    fn default() -> Self {
        let mut factories: BTreeMap<&'static str, SamplerFactory> = BTreeMap::new();
        factories.insert("full", |b| Box::new(FullSampler::new(b)));
        factories.insert("annulus", |b| match AnnulusSampler::new(b, ANNULUS_LEVEL) {
            Some(s) => Box::new(s),
            None => Box::new(FullSampler::new(b)),
        });
        SamplerRegistry { factories }
    }
}

impl SamplerRegistry {
    pub fn names(&self) -> Vec<&'static str> {
        self.factories.keys().copied().collect()
    }

    pub fn register(&mut self, name: &'static str, factory: SamplerFactory) {
        self.factories.insert(name, factory);
    }

    pub fn build(&self, name: &str, body: &ConvexBody) -> Result<Box<dyn HullSampler>> {
        let f = self
            .factories
            .get(name)
            .ok_or_else(|| Error::Unknown { registry: "sampler", name: name.to_string() })?;
        Ok(f(body))
    }
}

pub fn make_sampler(name: &str, body: &ConvexBody) -> Result<Box<dyn HullSampler>> {
    SamplerRegistry::default().build(name, body)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{make_body, BodySpec};
    use crate::process::points::{PoissonModel, UniformModel};

    #[test]
    fn ring_tiles_the_annulus() {
        for spec in ["disk:area=5000,k=1024", "square:side=60", "random:k=12,seed=3,area=2000"] {
            let b = make_body(&spec.parse().unwrap()).unwrap();
            let s = AnnulusSampler::new(&b, ANNULUS_LEVEL).unwrap();
            let want = b.area() - s.inner().area();
            assert!(((s.ring().area() - want) / want).abs() < 1e-10, "{spec}");
            let mut rng = SeedRecord::new(1, 1).rng();
            for _ in 0..20_000 {
                let p = s.ring().sample(&mut rng);
                assert!(b.contains_with_slack(p, 1e-9));
                assert!(!s.inner().contains_with_slack(p, -1e-9 * b.diameter()), "{spec}: {p:?}");
            }
        }
    }

    #[test]
    fn annulus_matches_full_in_law() {
        let b = make_body(&BodySpec::new("disk").with("area", 3000.0).with("k", 512.0)).unwrap();
        let full = FullSampler::new(&b);
        let ann = AnnulusSampler::new(&b, ANNULUS_LEVEL).unwrap();
        let m = 4000;
        let stats = |s: &dyn HullSampler| {
            let xs: Vec<(f64, f64)> = (0..m)
                .map(|t| {
                    let h = s.sample(&PoissonModel, SeedRecord::new(31, t));
                    (h.n as f64, h.a)
                })
                .collect();
            let mn = xs.iter().map(|x| x.0).sum::<f64>() / m as f64;
            let ma = xs.iter().map(|x| x.1).sum::<f64>() / m as f64;
            let vn = xs.iter().map(|x| (x.0 - mn).powi(2)).sum::<f64>() / (m - 1) as f64;
            let va = xs.iter().map(|x| (x.1 - ma).powi(2)).sum::<f64>() / (m - 1) as f64;
            (mn, ma, vn, va)
        };
        let (n1, a1, vn1, va1) = stats(&full);
        let (n2, a2, vn2, va2) = stats(&ann);
        let se_n = ((vn1 + vn2) / m as f64).sqrt();
        let se_a = ((va1 + va2) / m as f64).sqrt();
        assert!((n1 - n2).abs() < 4.0 * se_n, "{n1} {n2} {se_n}");
        assert!((a1 - a2).abs() < 4.0 * se_a, "{a1} {a2} {se_a}");
    }

    #[test]
    fn uniform_count_is_exact() {
        let b = make_body(&BodySpec::new("square").with("side", 50.0)).unwrap();
        let s = make_sampler("annulus", &b).unwrap();
        assert_eq!(s.name(), "annulus");
        for t in 0..20 {
            assert_eq!(s.sample(&UniformModel { n: 2500 }, SeedRecord::new(4, t)).point_count, 2500);
        }
        assert!(make_sampler("nope", &b).is_err());
    }

    #[test]
    fn small_bodies_fall_back() {
        let b = make_body(&BodySpec::new("square").with("side", 10.0)).unwrap();
        assert_eq!(make_sampler("annulus", &b).unwrap().name(), "full");
    }

    #[test]
    fn inner_points_drawn_when_needed() {
        // a very sparse uniform model leaves the inner polygon uncovered
        let b = make_body(&BodySpec::new("square").with("side", 50.0)).unwrap();
        let s = AnnulusSampler::new(&b, ANNULUS_LEVEL).unwrap();
        let h = s.sample(&UniformModel { n: 5 }, SeedRecord::new(0, 0));
        assert_eq!(h.point_count, 5);
        let full = FullSampler::new(&b).sample(&UniformModel { n: 5 }, SeedRecord::new(0, 0));
        assert!(h.n <= 5 && full.n <= 5);
    }
}
