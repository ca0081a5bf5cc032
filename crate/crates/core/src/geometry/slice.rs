//! Level sets of a body along a fixed direction.
//!
//! For a direction angle θ every line at angle θ is `{x : n·x = c}` with
//! `n = (-sin θ, cos θ)`. The boundary splits at the support vertices
//! `W(θ)` (minimum of `n·x`) and `W(θ+π)` (maximum) into a forward chain
//! (counterclockwise, along θ) and a backward chain, both monotone in `n·x`.
//! Locating a level on each chain is a binary search, so chord endpoints and
//! cap areas cost `O(log n)`; the exact shoelace evaluation costs
//! `O(vertices in the cap)`.

use super::body::ConvexBody;
use super::point::{left_normal, normalize_angle, Point};
use std::f64::consts::PI;

/// A direction-specific view of a body.
#[derive(Clone, Debug)]
pub struct Slicer<'a> {
    body: &'a ConvexBody,
    theta: f64,
    normal: Point,
    low: usize,
    fwd_len: usize,
    bwd_len: usize,
    s_min: f64,
    s_max: f64,
}

/// A line at angle θ and offset `c` strictly between the two tangent lines.
#[derive(Clone, Copy, Debug)]
pub struct Level {
    pub offset: f64,
    /// Last forward-chain step with `n·v <= c`.
    pub fwd: usize,
    /// Last backward-chain step with `n·v <= c`.
    pub bwd: usize,
    /// Chord endpoint on the backward chain.
    pub back: Point,
    /// Chord endpoint on the forward chain (further along θ).
    pub front: Point,
}

impl Level {
    pub fn chord_length(&self) -> f64 {
        self.back.dist(self.front)
    }
}

impl<'a> Slicer<'a> {
    pub fn new(body: &'a ConvexBody, theta: f64) -> Self {
        let theta = normalize_angle(theta);
        let n = body.len();
        let normal = left_normal(theta);
        let low = body.support_index(theta);
        let high = body.support_index(theta + PI);
        let fwd_len = (high + n - low) % n;
        let bwd_len = (low + n - high) % n;
        let s_min = body.vertex(low).dot(normal);
        let s_max = body.vertex(high).dot(normal);
        Slicer { body, theta, normal, low, fwd_len, bwd_len, s_min, s_max }
    }

    pub fn body(&self) -> &'a ConvexBody {
        self.body
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn normal(&self) -> Point {
        self.normal
    }

    /// Offsets of the two tangent lines.
    pub fn offset_range(&self) -> (f64, f64) {
        (self.s_min, self.s_max)
    }

    /// Index of `W(θ)`.
    pub fn low_index(&self) -> usize {
        self.low
    }

    #[inline]
    fn fwd_index(&self, t: usize) -> usize {
        (self.low + t) % self.body.len()
    }

    #[inline]
    fn bwd_index(&self, u: usize) -> usize {
        let n = self.body.len();
        (self.low + n - (u % n)) % n
    }

    #[inline]
    fn proj(&self, i: usize) -> f64 {
        self.body.vertex(i).dot(self.normal)
    }

    /// Locate the line at offset `c`; `None` unless `s_min < c < s_max`.
    pub fn level(&self, c: f64) -> Option<Level> {
        if !(c > self.s_min && c < self.s_max) {
            return None;
        }
        let fwd = last_at_most(self.fwd_len, c, |t| self.proj(self.fwd_index(t)));
        let bwd = last_at_most(self.bwd_len, c, |u| self.proj(self.bwd_index(u)));
        let front = self.cross_point(self.fwd_index(fwd), self.fwd_index(fwd + 1), c);
        let back = self.cross_point(self.bwd_index(bwd), self.bwd_index(bwd + 1), c);
        Some(Level { offset: c, fwd, bwd, back, front })
    }

    fn cross_point(&self, below: usize, above: usize, c: f64) -> Point {
        let a = self.body.vertex(below);
        let b = self.body.vertex(above);
        let sa = a.dot(self.normal);
        let sb = b.dot(self.normal);
        let t = ((c - sa) / (sb - sa)).clamp(0.0, 1.0);
        a.lerp(b, t)
    }

    /// Cap vertices (counterclockwise) for a level: back endpoint, body
    /// vertices on the low side, front endpoint.
    pub fn cap_polygon(&self, lv: &Level) -> Vec<Point> {
        let mut out = Vec::with_capacity(lv.fwd + lv.bwd + 3);
        out.push(lv.back);
        let start = self.bwd_index(lv.bwd);
        for k in 0..=(lv.fwd + lv.bwd) {
            out.push(self.body.vertex(start + k));
        }
        out.push(lv.front);
        out
    }

    /// Exact cap area at a level: shoelace over the cap polygon about `W(θ)`.
    pub fn area_exact(&self, lv: &Level) -> f64 {
        let o = self.body.vertex(self.low);
        let start = self.bwd_index(lv.bwd);
        let mut prev = lv.back - o;
        let mut twice = 0.0;
        for k in 0..=(lv.fwd + lv.bwd) {
            let cur = self.body.vertex(start + k) - o;
            twice += prev.cross(cur);
            prev = cur;
        }
        let f = lv.front - o;
        twice += prev.cross(f);
        twice += f.cross(lv.back - o);
        0.5 * twice
    }

    /// Cap area from the body's prefix sums in `O(1)` after location. Absolute
    /// error is of order `ε · area(K)`.
    pub fn area_fast(&self, lv: &Level) -> f64 {
        let c = self.body.centroid();
        let start = self.bwd_index(lv.bwd);
        let steps = lv.fwd + lv.bwd;
        let chain = self.body.chain_twice_area(start, steps);
        let first = self.body.vertex(start) - c;
        let last = self.body.vertex(start + steps) - c;
        let b = lv.back - c;
        let f = lv.front - c;
        0.5 * (chain + b.cross(first) + last.cross(f) + f.cross(b))
    }

    /// Cap area for the half-plane `{n·x <= c}`, accurate to `ε · area(K)`.
    pub fn cap_area_fast(&self, c: f64) -> f64 {
        if c <= self.s_min {
            0.0
        } else if c >= self.s_max {
            self.body.area()
        } else {
            let lv = self.level(c).expect("offset inside range");
            self.area_fast(&lv).clamp(0.0, self.body.area())
        }
    }

    /// Cap area for the half-plane `{n·x <= c}`, exact up to rounding of the
    /// cap's own vertices.
    pub fn cap_area_exact(&self, c: f64) -> f64 {
        if c <= self.s_min {
            0.0
        } else if c >= self.s_max {
            self.body.area()
        } else {
            let lv = self.level(c).expect("offset inside range");
            self.area_exact(&lv)
        }
    }

    /// Offset of the line whose cap has area `r`, for `0 < r < area(K)`.
    ///
    /// Bisection on the offset using the prefix-sum area (monotone in the
    /// offset), to an offset bracket of `1e-13 · diam(K)`; then Newton steps on
    /// the exact area, whose derivative in the offset is the chord length.
    pub fn offset_for_area(&self, r: f64) -> Level {
        let total = self.body.area();
        debug_assert!(r > 0.0 && r < total);
        let tol = 1e-13 * self.body.diameter();
        let (mut lo, mut hi) = (self.s_min, self.s_max);
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.cap_area_fast(mid) < r {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut c = 0.5 * (lo + hi);
        let mut lv = self.clamped_level(c);
        for _ in 0..6 {
            let a = self.area_exact(&lv);
            let err = r - a;
            if err.abs() <= 1e-14 * r.max(1.0) {
                break;
            }
            let len = lv.chord_length();
            if len <= 0.0 {
                break;
            }
            let next = c + err / len;
            if next == c {
                break;
            }
            c = next;
            lv = self.clamped_level(c);
        }
        lv
    }

    fn clamped_level(&self, c: f64) -> Level {
        let span = self.s_max - self.s_min;
        let eps = 1e-15 * span.max(f64::MIN_POSITIVE);
        let c = c.clamp(self.s_min + eps, self.s_max - eps);
        self.level(c)
            .or_else(|| self.level(0.5 * (self.s_min + self.s_max)))
            .expect("non-degenerate body")
    }

    /// Index of the body edge carrying the front endpoint of a level.
    pub fn front_edge(&self, lv: &Level) -> usize {
        self.fwd_index(lv.fwd)
    }

    /// Index of the body edge carrying the back endpoint of a level.
    pub fn back_edge(&self, lv: &Level) -> usize {
        self.bwd_index(lv.bwd + 1)
    }

    /// Chord length of the line at offset `c` (0 outside the body).
    pub fn chord_length_at(&self, c: f64) -> f64 {
        self.level(c).map_or(0.0, |lv| lv.chord_length())
    }
}

/// Largest `t` in `0..len` with `key(t) <= c`, assuming `key` nondecreasing on
/// `0..=len`, `key(0) < c` and `key(len) > c`.
fn last_at_most<F: Fn(usize) -> f64>(len: usize, c: f64, key: F) -> usize {
    let (mut lo, mut hi) = (0usize, len);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if key(mid) <= c {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn strip_level() {
        let sq = square(10.0);
        let sl = Slicer::new(&sq, 0.0);
        let lv = sl.level(0.5).unwrap();
        assert_eq!(lv.back, Point::new(0.0, 0.5));
        assert_eq!(lv.front, Point::new(10.0, 0.5));
        assert!((sl.area_exact(&lv) - 5.0).abs() < 1e-12);
        assert!((sl.area_fast(&lv) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn corner_level() {
        let sq = square(10.0);
        // θ = π/4: lines of slope 1, cap in the lower-right corner
        let sl = Slicer::new(&sq, PI / 4.0);
        assert_eq!(sq.vertex(sl.low_index()), Point::new(10.0, 0.0));
        let r = 1.0;
        let lv = sl.offset_for_area(r);
        assert!((sl.area_exact(&lv) - r).abs() < 1e-13);
        assert!((lv.chord_length() - 2.0).abs() < 1e-12);
        assert!(lv.front.y > lv.back.y);
    }

    #[test]
    fn empty_and_full() {
        let sq = square(2.0);
        let sl = Slicer::new(&sq, 0.0);
        assert_eq!(sl.cap_area_exact(-1.0), 0.0);
        assert_eq!(sl.cap_area_exact(5.0), 4.0);
        assert!(sl.level(0.0).is_none());
    }
}
