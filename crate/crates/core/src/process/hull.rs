//! The random polygon `Π_K` and its functionals `N` and `A`.

use super::points::PointSet;
use crate::error::{Error, Result};
use crate::geometry::hull::convex_hull;
use crate::geometry::point::{normalize_angle, signed_area};
use crate::geometry::{ConvexBody, Point};
use serde::{Deserialize, Serialize};

/// Convex hull of a point set, with `N` and `A`.
///
/// Non-degenerate hulls are stored like bodies: counterclockwise, rotated so
/// that edge 0 has the smallest direction angle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HullResult {
    pub hull_vertices: Vec<Point>,
    pub edge_angles: Vec<f64>,
    /// Fewer than three extreme points.
    pub degenerate: bool,
    /// Number of vertices (number of distinct extreme points if degenerate).
    pub n: usize,
    /// `area(K) − area(Π)`; `area(K)` if degenerate.
    pub a: f64,
    pub hull_area: f64,
    /// Points in the trial (including any that were never materialised).
    pub point_count: u64,
}

impl HullResult {
    pub fn from_points(points: &[Point], body_area: f64, point_count: u64) -> Self {
        let mut v = convex_hull(points);
        if v.len() < 3 {
            let n = v.len();
            return HullResult {
                hull_vertices: v,
                edge_angles: Vec::new(),
                degenerate: true,
                n,
                a: body_area,
                hull_area: 0.0,
                point_count,
            };
        }
        let m = v.len();
        let raw: Vec<f64> = (0..m).map(|i| (v[(i + 1) % m] - v[i]).angle()).collect();
        let start = (0..m).min_by(|&i, &j| raw[i].total_cmp(&raw[j])).expect("m >= 3");
        v.rotate_left(start);
        let mut edge_angles = raw;
        edge_angles.rotate_left(start);
        let hull_area = signed_area(&v);
        HullResult {
            n: m,
            a: (body_area - hull_area).max(0.0),
            hull_vertices: v,
            edge_angles,
            degenerate: false,
            hull_area,
            point_count,
        }
    }

    pub fn len(&self) -> usize {
        self.hull_vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hull_vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.hull_vertices[i % self.hull_vertices.len()]
    }

    /// Index of `W(θ)` on the hull (same tie rule as bodies).
    pub fn support_index(&self, theta: f64) -> Result<usize> {
        if self.degenerate {
            return Err(Error::Degenerate("hull has fewer than three vertices".into()));
        }
        let t = normalize_angle(theta);
        Ok(self.edge_angles.partition_point(|&e| e <= t) % self.hull_vertices.len())
    }
}

/// `Π_K` of a point set in `body`.
pub fn hull(body: &ConvexBody, points: &PointSet) -> HullResult {
    HullResult::from_points(&points.points, body.area(), points.points.len() as u64)
}

/// `(N, A)`, after checking that the hull lies in the body.
pub fn functionals(body: &ConvexBody, hull: &HullResult) -> Result<(usize, f64)> {
    let slack = 1e-9 * body.diameter();
    if let Some(p) = hull.hull_vertices.iter().find(|&&p| !body.contains_with_slack(p, slack)) {
        return Err(Error::OutsideBody { x: p.x, y: p.y });
    }
    if hull.degenerate {
        return Ok((hull.n, body.area()));
    }
    Ok((hull.n, (body.area() - hull.hull_area).max(0.0)))
}

/// `W(θ)` of the random polygon.
pub fn hull_support_vertex(hull: &HullResult, theta: f64) -> Result<Point> {
    Ok(hull.hull_vertices[hull.support_index(theta)?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::hull::gift_wrap;
    use crate::geometry::{make_body, BodySpec};
    use crate::process::points::sample_poisson;
    use crate::process::rng::SeedRecord;
    use std::f64::consts::TAU;

    #[test]
    fn triangle_and_collinear() {
        let pts = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0), Point::new(0.2, 0.2)];
        let h = HullResult::from_points(&pts, 5.0, 4);
        assert!(!h.degenerate);
        assert_eq!(h.n, 3);
        assert!((h.a - 4.5).abs() < 1e-15);
        let line = [Point::new(0.0, 0.0), Point::new(1.0, 1.0), Point::new(2.0, 2.0)];
        let d = HullResult::from_points(&line, 5.0, 3);
        assert!(d.degenerate);
        assert_eq!(d.n, 2);
        assert_eq!(d.a, 5.0);
        assert!(d.support_index(0.0).is_err());
    }

    #[test]
    fn vertices_of_body_give_zero_area() {
        let b = make_body(&"random:k=15,seed=4,area=80".parse().unwrap()).unwrap();
        let ps = PointSet { points: b.vertices().to_vec(), body_id: b.id(), seed: SeedRecord::new(0, 0) };
        let (n, a) = functionals(&b, &hull(&b, &ps)).unwrap();
        assert_eq!(n, 15);
        assert!(a.abs() < 1e-10);
    }

    #[test]
    fn agrees_with_gift_wrapping() {
        let b = make_body(&BodySpec::new("disk").with("area", 200.0).with("k", 64.0)).unwrap();
        for t in 0..50 {
            let ps = sample_poisson(&b, SeedRecord::new(3, t));
            let h = hull(&b, &ps);
            let mut g = gift_wrap(&ps.points);
            let mut v = h.hull_vertices.clone();
            let key = |p: &Point| (p.x.to_bits(), p.y.to_bits());
            g.sort_by_key(key);
            v.sort_by_key(key);
            assert_eq!(g, v);
            // idempotence
            let again = HullResult::from_points(&h.hull_vertices, b.area(), 0);
            assert_eq!(again.hull_vertices, h.hull_vertices);
        }
    }

    #[test]
    fn support_vertex_is_piecewise_constant() {
        let pts = [Point::new(0.0, 0.0), Point::new(4.0, 0.0), Point::new(1.0, 3.0)];
        let h = HullResult::from_points(&pts, 100.0, 3);
        let mut arcs = [0.0; 3];
        let m = 100_000;
        for i in 0..m {
            let p = hull_support_vertex(&h, TAU * (i as f64 + 0.5) / m as f64).unwrap();
            let k = h.hull_vertices.iter().position(|&q| q == p).unwrap();
            arcs[k] += TAU / m as f64;
        }
        assert!((arcs.iter().sum::<f64>() - TAU).abs() < 1e-9);
        // the arc of a vertex is its exterior angle
        for k in 0..3 {
            let turn = normalize_angle(h.edge_angles[k] - h.edge_angles[(k + 2) % 3]);
            assert!((arcs[k] - turn).abs() < 1e-3, "{arcs:?}");
        }
    }

    #[test]
    fn rejects_hull_outside_body() {
        let b = make_body(&BodySpec::new("square").with("side", 1.0)).unwrap();
        let h = HullResult::from_points(&[Point::new(0.0, 0.0), Point::new(2.0, 0.0), Point::new(0.0, 1.0)], 1.0, 3);
        assert!(functionals(&b, &h).is_err());
    }
}
