//! Convex bodies represented as strictly convex counterclockwise polygons.

use super::hull::convex_hull;
use super::point::{left_normal, normalize_angle, twice_signed_area_about, Point};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// A convex body `K`: a strictly convex polygon, vertices counterclockwise.
///
/// The vertex list is rotated so that edge 0 (from `vertices[0]` to
/// `vertices[1]`) has the smallest direction angle; edge angles are then
/// strictly increasing in `[0, 2π)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "BodyRepr", into = "BodyRepr")]
pub struct ConvexBody {
    vertices: Vec<Point>,
    edge_angles: Vec<f64>,
    area: f64,
    centroid: Point,
    diameter: f64,
    /// `prefix[k] = Σ_{m<k} cross(v_m - centroid, v_{m+1} - centroid)` over the
    /// doubled index range `0..=2n`.
    prefix: Vec<f64>,
    id: u64,
}

#[derive(Serialize, Deserialize)]
struct BodyRepr {
    vertices: Vec<Point>,
}

impl TryFrom<BodyRepr> for ConvexBody {
    type Error = Error;
    fn try_from(r: BodyRepr) -> Result<Self> {
        ConvexBody::new(r.vertices)
    }
}

impl From<ConvexBody> for BodyRepr {
    fn from(b: ConvexBody) -> Self {
        BodyRepr { vertices: b.vertices }
    }
}

impl PartialEq for ConvexBody {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl ConvexBody {
    /// Build from counterclockwise vertices. Rejects anything that is not
    /// strictly convex with positive area.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::Degenerate(format!("{n} vertices")));
        }
        if vertices.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(Error::Degenerate("non-finite vertex".into()));
        }
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            if (b - a).cross(c - b) <= 0.0 {
                return Err(Error::Degenerate(format!("not strictly convex at vertex {}", (i + 1) % n)));
            }
        }
        let raw_angles: Vec<f64> = (0..n).map(|i| (vertices[(i + 1) % n] - vertices[i]).angle()).collect();
        let start = (0..n)
            .min_by(|&i, &j| raw_angles[i].total_cmp(&raw_angles[j]))
            .expect("n >= 3");
        let mut vertices = vertices;
        vertices.rotate_left(start);
        let mut edge_angles = raw_angles;
        edge_angles.rotate_left(start);
        if edge_angles.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Degenerate("boundary winds more than once".into()));
        }
        let origin = vertices[0];
        let twice = twice_signed_area_about(&vertices, origin);
        if twice <= 0.0 {
            return Err(Error::Degenerate("non-positive area".into()));
        }
        let area = 0.5 * twice;
        let centroid = polygon_centroid(&vertices, area);
        let mut prefix = Vec::with_capacity(2 * n + 1);
        prefix.push(0.0);
        let mut acc = 0.0;
        for k in 0..2 * n {
            let a = vertices[k % n] - centroid;
            let b = vertices[(k + 1) % n] - centroid;
            acc += a.cross(b);
            prefix.push(acc);
        }
        let mut body = ConvexBody {
            vertices,
            edge_angles,
            area,
            centroid,
            diameter: 0.0,
            prefix,
            id: 0,
        };
        body.diameter = body.compute_diameter();
        body.id = fingerprint(&body.vertices);
        Ok(body)
    }

    /// Convex hull of arbitrary points as a body.
    pub fn from_points(points: &[Point]) -> Result<Self> {
        let hull = convex_hull(points);
        Self::new(hull)
    }

    /// Build from a possibly sloppy counterclockwise convex vertex list (for
    /// example a clipping result): near-duplicate and near-collinear vertices
    /// are removed. Returns `None` when nothing with positive area remains.
    pub fn from_ccw_cleaned(points: &[Point]) -> Option<Self> {
        if points.len() < 3 {
            return None;
        }
        let (mut lo, mut hi) = (points[0], points[0]);
        for p in points {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let scale = (hi - lo).norm();
        if scale == 0.0 {
            return None;
        }
        let dup = 1e-12 * scale;
        let flat = 1e-15 * scale * scale;
        let mut pts: Vec<Point> = Vec::with_capacity(points.len());
        for &p in points {
            if pts.last().map_or(true, |q: &Point| q.dist(p) > dup) {
                pts.push(p);
            }
        }
        while pts.len() > 1 && pts[0].dist(pts[pts.len() - 1]) <= dup {
            pts.pop();
        }
        let mut changed = true;
        while changed && pts.len() >= 3 {
            changed = false;
            let n = pts.len();
            let mut keep = Vec::with_capacity(n);
            for i in 0..n {
                let a = pts[(i + n - 1) % n];
                let b = pts[i];
                let c = pts[(i + 1) % n];
                if (b - a).cross(c - b) > flat {
                    keep.push(b);
                } else {
                    changed = true;
                }
            }
            pts = keep;
        }
        if pts.len() < 3 {
            return None;
        }
        Self::new(pts).ok()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Direction angle of edge `i` (from vertex `i` to vertex `i+1`).
    pub fn edge_angles(&self) -> &[f64] {
        &self.edge_angles
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn centroid(&self) -> Point {
        self.centroid
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Identity used to check that caps come from the same body.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i % self.vertices.len()]
    }

    /// Index of the vertex touched by the directed tangent line at angle
    /// `theta` (body on its left). When the tangent contains an edge, the
    /// edge endpoint further along `theta` is returned.
    pub fn support_index(&self, theta: f64) -> usize {
        let t = normalize_angle(theta);
        let j = self.edge_angles.partition_point(|&e| e <= t);
        j % self.vertices.len()
    }

    /// `W(θ)` for the body: see [`ConvexBody::support_index`].
    pub fn support_vertex(&self, theta: f64) -> Point {
        self.vertices[self.support_index(theta)]
    }

    /// Twice the signed area of the boundary chain from vertex `a` to vertex
    /// `a + len` (counterclockwise), measured about the centroid.
    pub(crate) fn chain_twice_area(&self, a: usize, len: usize) -> f64 {
        let n = self.vertices.len();
        let a = a % n;
        debug_assert!(len <= n);
        self.prefix[a + len] - self.prefix[a]
    }

    /// Twice the signed area of the chain from vertex `a` to vertex `a + len`
    /// about an arbitrary origin `o`.
    pub(crate) fn chain_twice_area_about(&self, a: usize, len: usize, o: Point) -> f64 {
        let n = self.vertices.len();
        if len == 0 {
            return 0.0;
        }
        // Σ (v_k − o) × (v_{k+1} − o) = Σ (v_k − c) × (v_{k+1} − c) + (c − o) × (v_{a+len} − v_a)
        let c = self.centroid;
        self.chain_twice_area(a % n, len) + (c - o).cross(self.vertices[(a + len) % n] - self.vertices[a % n])
    }

    /// Containment with an absolute slack (positive slack enlarges the body).
    pub fn contains_with_slack(&self, p: Point, slack: f64) -> bool {
        let n = self.vertices.len();
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let e = b - a;
            let len = e.norm();
            if e.cross(p - a) < -slack * len {
                return false;
            }
        }
        true
    }

    /// Containment test in `O(log n)` (closed body, no slack).
    pub fn contains(&self, p: Point) -> bool {
        let n = self.vertices.len();
        let v0 = self.vertices[0];
        let d = p - v0;
        if (self.vertices[1] - v0).cross(d) < 0.0 || (self.vertices[n - 1] - v0).cross(d) > 0.0 {
            return false;
        }
        // find the fan triangle (v0, v_k, v_{k+1}) containing the direction of p
        let mut lo = 1;
        let mut hi = n - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if (self.vertices[mid] - v0).cross(d) >= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (self.vertices[hi] - self.vertices[lo]).cross(p - self.vertices[lo]) >= 0.0
    }

    /// Width of the body in the direction of the left normal of `theta`,
    /// i.e. the offset range of lines at angle `theta` meeting the body.
    pub fn offset_range(&self, theta: f64) -> (f64, f64) {
        let n = left_normal(theta);
        let lo = self.support_vertex(theta).dot(n);
        let hi = self.support_vertex(theta + PI).dot(n);
        (lo, hi)
    }

    fn compute_diameter(&self) -> f64 {
        let n = self.vertices.len();
        let mut best: f64 = 0.0;
        for i in 0..n {
            let j = self.support_index(self.edge_angles[i] + PI);
            let w = self.vertices[j];
            best = best.max(self.vertices[i].dist(w)).max(self.vertices[(i + 1) % n].dist(w));
        }
        best
    }

    /// Uniform rescaling about the centroid to exactly `target` area (up to
    /// rounding).
    pub fn rescaled_to_area(&self, target: f64) -> Result<Self> {
        if !(target > 0.0) || !target.is_finite() {
            return Err(Error::param("area", format!("must be positive, got {target}")));
        }
        let mut body = self.clone();
        for _ in 0..3 {
            let s = (target / body.area).sqrt();
            let c = body.centroid;
            let pts = body.vertices.iter().map(|&p| c + (p - c) * s).collect();
            body = ConvexBody::new(pts)?;
            if ((body.area - target) / target).abs() <= 1e-14 {
                break;
            }
        }
        Ok(body)
    }

    /// Axis-aligned bounding box `(min, max)`.
    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for p in &self.vertices {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        (lo, hi)
    }

    /// Angle of the boundary direction at vertex `i` halfway between its two
    /// edges; handy for tests.
    pub fn vertex_bisector_angle(&self, i: usize) -> f64 {
        let n = self.vertices.len();
        let i = i % n;
        let before = self.edge_angles[(i + n - 1) % n];
        let mut after = self.edge_angles[i];
        if after < before {
            after += TAU;
        }
        normalize_angle(0.5 * (before + after))
    }
}

fn polygon_centroid(v: &[Point], area: f64) -> Point {
    let o = v[0];
    let n = v.len();
    let (mut cx, mut cy) = (0.0, 0.0);
    for i in 0..n {
        let a = v[i] - o;
        let b = v[(i + 1) % n] - o;
        let w = a.cross(b);
        cx += (a.x + b.x) * w;
        cy += (a.y + b.y) * w;
    }
    Point::new(o.x + cx / (6.0 * area), o.y + cy / (6.0 * area))
}

fn fingerprint(v: &[Point]) -> u64 {
    let mut h = 0x9E37_79B9_7F4A_7C15u64 ^ v.len() as u64;
    for p in v {
        h = crate::process::rng::splitmix64(h ^ p.x.to_bits());
        h = crate::process::rng::splitmix64(h ^ p.y.to_bits());
    }
    h
}
