use super::body::ConvexBody;
use super::point::{direction, Point};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// An orientation- and area-preserving affine map `x ↦ M x + t`, `det M = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    pub m: [[f64; 2]; 2],
    pub t: Point,
}

impl AffineMap {
    pub fn new(m: [[f64; 2]; 2], t: Point) -> Result<Self> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if !det.is_finite() || (det - 1.0).abs() > 1e-12 {
            return Err(Error::NotUnimodular { det });
        }
        Ok(AffineMap { m, t })
    }

    pub fn identity() -> Self {
        AffineMap { m: [[1.0, 0.0], [0.0, 1.0]], t: Point::default() }
    }

    pub fn rotation(phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        AffineMap { m: [[c, -s], [s, c]], t: Point::default() }
    }

    #[inline]
    pub fn linear(&self, v: Point) -> Point {
        Point::new(self.m[0][0] * v.x + self.m[0][1] * v.y, self.m[1][0] * v.x + self.m[1][1] * v.y)
    }

    #[inline]
    pub fn apply(&self, p: Point) -> Point {
        self.linear(p) + self.t
    }

    /// The induced action on directions: the angle of `M (cos θ, sin θ)`.
    pub fn map_angle(&self, theta: f64) -> f64 {
        self.linear(direction(theta)).angle()
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        let a = self.m;
        let b = other.m;
        let m = [
            [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ];
        AffineMap { m, t: self.apply(other.t) }
    }
}

/// `gK` for a unimodular `g`.
pub fn apply_affine(body: &ConvexBody, g: &AffineMap) -> Result<ConvexBody> {
    let det = g.m[0][0] * g.m[1][1] - g.m[0][1] * g.m[1][0];
    if (det - 1.0).abs() > 1e-12 {
        return Err(Error::NotUnimodular { det });
    }
    ConvexBody::new(body.vertices().iter().map(|&p| g.apply(p)).collect())
}
