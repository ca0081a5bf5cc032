//! Half-planes, caps and the chord function.

use super::body::ConvexBody;
use super::point::{left_normal, normalize_angle, signed_area, Point};
use super::slice::Slicer;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// The half-plane `{x : n(θ)·x <= offset}` with `n(θ) = (-sin θ, cos θ)`.
///
/// Its boundary is a line at angle θ; bodies touching it from inside lie on
/// the left of the directed line, so a half-plane at angle θ cuts the cap
/// that shrinks towards `W(θ)` as the offset decreases.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfPlane {
    angle: f64,
    offset: f64,
}

impl HalfPlane {
    pub fn new(angle: f64, offset: f64) -> Self {
        HalfPlane { angle: normalize_angle(angle), offset }
    }

    /// Half-plane at angle θ whose boundary passes through `p`.
    pub fn through(p: Point, angle: f64) -> Self {
        let angle = normalize_angle(angle);
        HalfPlane { angle, offset: left_normal(angle).dot(p) }
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn normal(&self) -> Point {
        left_normal(self.angle)
    }

    /// Signed distance, negative inside.
    #[inline]
    pub fn signed_distance(&self, p: Point) -> f64 {
        self.normal().dot(p) - self.offset
    }

    pub fn contains(&self, p: Point) -> bool {
        self.signed_distance(p) <= 0.0
    }

    /// The closure of the complement, as a half-plane at angle θ+π.
    pub fn complement(&self) -> HalfPlane {
        HalfPlane::new(self.angle + std::f64::consts::PI, -self.offset)
    }
}

/// A cap `K ∩ H` at angle θ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cap {
    pub halfplane: HalfPlane,
    /// Chord endpoints; `chord[1]` lies further along θ.
    pub chord: [Point; 2],
    pub area: f64,
    pub body_id: u64,
}

impl Cap {
    pub fn angle(&self) -> f64 {
        self.halfplane.angle()
    }

    pub fn chord_length(&self) -> f64 {
        self.chord[0].dist(self.chord[1])
    }

    pub fn midpoint(&self) -> Point {
        self.chord[0].lerp(self.chord[1], 0.5)
    }
}

/// Sutherland–Hodgman step: keep the part of a convex polygon inside `h`.
pub fn clip_polygon(poly: &[Point], h: &HalfPlane) -> Vec<Point> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    if n == 0 {
        return out;
    }
    let nrm = h.normal();
    let dist = |p: Point| nrm.dot(p) - h.offset();
    let mut prev = poly[n - 1];
    let mut d_prev = dist(prev);
    for &cur in poly {
        let d_cur = dist(cur);
        if d_cur <= 0.0 {
            if d_prev > 0.0 {
                out.push(prev.lerp(cur, d_prev / (d_prev - d_cur)));
            }
            out.push(cur);
        } else if d_prev < 0.0 {
            out.push(prev.lerp(cur, d_prev / (d_prev - d_cur)));
        }
        prev = cur;
        d_prev = d_cur;
    }
    out
}

/// `K ∩ H`, or `None` when the intersection has no interior.
pub fn clip(body: &ConvexBody, h: &HalfPlane) -> Option<ConvexBody> {
    let (lo, hi) = body.offset_range(h.angle());
    if h.offset() >= hi {
        return Some(body.clone());
    }
    if h.offset() <= lo {
        return None;
    }
    let poly = clip_polygon(body.vertices(), h);
    ConvexBody::from_ccw_cleaned(&poly)
}

/// Area of `K ∩ H` straight from the clipped vertex list.
pub fn clip_area(body: &ConvexBody, h: &HalfPlane) -> f64 {
    signed_area(&clip_polygon(body.vertices(), h)).max(0.0)
}

/// `W(θ)`: the vertex touched by the directed tangent line at angle θ.
pub fn support_vertex(body: &ConvexBody, theta: f64) -> Point {
    body.support_vertex(theta)
}

/// `C_K(p, θ)`: the cap at angle θ whose boundary line passes through `p`.
///
/// A point on the tangent line at `W(θ)` gives a zero-area cap (the chord
/// degenerates to the tangent contact); a point on the opposite tangent line
/// gives the whole body.
pub fn cap_by_point(body: &ConvexBody, p: Point, theta: f64) -> Result<Cap> {
    if !body.contains_with_slack(p, 1e-9 * body.diameter()) {
        return Err(Error::OutsideBody { x: p.x, y: p.y });
    }
    let slicer = Slicer::new(body, theta);
    let h = HalfPlane::through(p, theta);
    let (lo, hi) = slicer.offset_range();
    let c = h.offset();
    let (chord, area) = if c <= lo {
        let w = body.vertex(slicer.low_index());
        // tangent contact: the chord is the tangent edge if there is one
        let prev = body.vertex(slicer.low_index() + body.len() - 1);
        let on_edge = (slicer.normal().dot(prev) - lo).abs() <= 1e-12 * body.diameter();
        ([if on_edge { prev } else { w }, w], 0.0)
    } else if c >= hi {
        let top = body.support_index(theta + std::f64::consts::PI);
        let w = body.vertex(top);
        let next = body.vertex(top + 1);
        let on_edge = (slicer.normal().dot(next) - hi).abs() <= 1e-12 * body.diameter();
        ([w, if on_edge { next } else { w }], body.area())
    } else {
        let lv = slicer.level(c).expect("offset inside range");
        ([lv.back, lv.front], slicer.area_exact(&lv))
    };
    Ok(Cap { halfplane: h, chord, area, body_id: body.id() })
}

/// `A_K(p, θ)`: the area of `C_K(p, θ)`. Points outside the body are
/// allowed; the area is then 0 or `area(K)`.
pub fn cap_area_at_point(body: &ConvexBody, p: Point, theta: f64) -> f64 {
    let slicer = Slicer::new(body, theta);
    slicer.cap_area_exact(slicer.normal().dot(p))
}

/// `C_K(r, θ)`: the cap at angle θ with area `r`, `0 < r <= area(K)`.
pub fn cap_by_area(body: &ConvexBody, r: f64, theta: f64) -> Result<Cap> {
    let total = body.area();
    if !(r > 0.0 && r <= total) {
        return Err(Error::param("r", format!("cap area {r} outside (0, {total}]")));
    }
    let slicer = Slicer::new(body, theta);
    if r == total {
        let (_, hi) = slicer.offset_range();
        let top = body.support_index(theta + std::f64::consts::PI);
        let w = body.vertex(top);
        let next = body.vertex(top + 1);
        let on_edge = (slicer.normal().dot(next) - hi).abs() <= 1e-12 * body.diameter();
        return Ok(Cap {
            halfplane: HalfPlane::new(theta, hi),
            chord: [w, if on_edge { next } else { w }],
            area: total,
            body_id: body.id(),
        });
    }
    let lv = slicer.offset_for_area(r);
    Ok(Cap {
        halfplane: HalfPlane::new(theta, lv.offset),
        chord: [lv.back, lv.front],
        area: slicer.area_exact(&lv),
        body_id: body.id(),
    })
}

/// The chord function `f_K(x, θ)`: the chord length of the cap of area
/// `log(1/x)`, and 0 when `x <= exp(-area(K))`. `f(1, θ) = 0`.
pub fn chord_length_f(body: &ConvexBody, x: f64, theta: f64) -> Result<f64> {
    if !(x > 0.0 && x <= 1.0) {
        return Err(Error::param("x", format!("{x} not in (0, 1]")));
    }
    if x == 1.0 || x <= (-body.area()).exp() {
        return Ok(0.0);
    }
    let r = -x.ln();
    if r <= 0.0 {
        return Ok(0.0);
    }
    if r >= body.area() {
        return Ok(0.0);
    }
    Ok(cap_by_area(body, r, theta)?.chord_length())
}

/// Area of `C₁ ∩ C₂` for two caps of the same body.
pub fn cap_intersection_area(body: &ConvexBody, c1: &Cap, c2: &Cap) -> Result<f64> {
    if c1.body_id != body.id() || c2.body_id != body.id() {
        return Err(Error::BodyMismatch);
    }
    let first = clip_polygon(body.vertices(), &c1.halfplane);
    let both = clip_polygon(&first, &c2.halfplane);
    Ok(signed_area(&both).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn square(s: f64) -> ConvexBody {
        ConvexBody::new(vec![
            Point::new(0.0, 0.0),
            Point::new(s, 0.0),
            Point::new(s, s),
            Point::new(0.0, s),
        ])
        .unwrap()
    }

    #[test]
    fn clip_unit_square_strip() {
        let sq = square(1.0);
        let half = clip(&sq, &HalfPlane::new(0.0, 0.5)).unwrap();
        assert!((half.area() - 0.5).abs() < 1e-15);
        let (lo, hi) = half.bounding_box();
        assert_eq!((lo, hi), (Point::new(0.0, 0.0), Point::new(1.0, 0.5)));
    }

    #[test]
    fn clip_identity_and_empty() {
        let sq = square(1.0);
        assert_eq!(clip(&sq, &HalfPlane::new(0.0, 3.0)).unwrap(), sq);
        assert!(clip(&sq, &HalfPlane::new(0.0, -0.1)).is_none());
        assert!(clip(&sq, &HalfPlane::new(0.0, 0.0)).is_none());
    }

    #[test]
    fn cap_by_point_strip() {
        let sq = square(10.0);
        let cap = cap_by_point(&sq, Point::new(5.0, 0.5), 0.0).unwrap();
        assert!((cap.area - 5.0).abs() < 1e-12);
        assert!((cap.chord_length() - 10.0).abs() < 1e-12);
    }

    #[test]
    fn cap_by_point_at_tangent_is_empty() {
        let sq = square(10.0);
        let cap = cap_by_point(&sq, Point::new(10.0, 0.0), PI / 4.0).unwrap();
        assert_eq!(cap.area, 0.0);
        assert!(cap_by_point(&sq, Point::new(11.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn cap_by_area_strip_and_corner() {
        let sq = square(10.0);
        let strip = cap_by_area(&sq, 5.0, 0.0).unwrap();
        assert!((strip.halfplane.offset() - 0.5).abs() < 1e-13);
        assert!((strip.chord_length() - 10.0).abs() < 1e-12);
        // corner triangle: c = sqrt(4 r / sin 2φ), φ = π/4, r = 1
        let corner = cap_by_area(&sq, 1.0, PI / 4.0).unwrap();
        assert!((corner.chord_length() - 2.0).abs() < 1e-12);
        assert!((corner.area - 1.0).abs() < 1e-13);
        assert!(cap_by_area(&sq, 0.0, 0.0).is_err());
        assert!(cap_by_area(&sq, 100.5, 0.0).is_err());
        assert_eq!(cap_by_area(&sq, 100.0, 0.0).unwrap().area, 100.0);
    }

    #[test]
    fn chord_function_branches() {
        let sq = square(10.0);
        assert_eq!(chord_length_f(&sq, 1.0, 0.3).unwrap(), 0.0);
        assert_eq!(chord_length_f(&sq, (-100.0f64).exp(), 0.3).unwrap(), 0.0);
        assert_eq!(chord_length_f(&sq, 1e-300, 0.3).unwrap(), 0.0);
        assert!((chord_length_f(&sq, (-1.0f64).exp(), 0.0).unwrap() - 10.0).abs() < 1e-12);
        assert!(chord_length_f(&sq, 0.0, 0.0).is_err());
        assert!(chord_length_f(&sq, 1.5, 0.0).is_err());
    }

    #[test]
    fn right_triangle_hypotenuse_chords() {
        // legs 100 on the axes; hypotenuse direction (-1, 1) at angle 3π/4,
        // body on its left, so caps at angle 3π/4 + π cut the corner at the origin.
        let tri = ConvexBody::new(vec![
            Point::new(0.0, 0.0),
            Point::new(100.0, 0.0),
            Point::new(0.0, 100.0),
        ])
        .unwrap();
        let theta = 3.0 * PI / 4.0 + PI;
        let f = chord_length_f(&tri, (-2.0f64).exp(), theta).unwrap();
        assert!((f - 2.0 * 2f64.sqrt()).abs() < 1e-12, "{f}");
    }

    #[test]
    fn intersection_of_caps() {
        let sq = square(10.0);
        let c = cap_by_area(&sq, 5.0, 0.0).unwrap();
        assert!((cap_intersection_area(&sq, &c, &c).unwrap() - 5.0).abs() < 1e-12);
        let d = cap_by_area(&sq, 5.0, PI).unwrap();
        assert_eq!(cap_intersection_area(&sq, &c, &d).unwrap(), 0.0);
        let other = square(11.0);
        assert_eq!(cap_intersection_area(&other, &c, &d), Err(Error::BodyMismatch));
    }
}
