//! Sequences of unit caps overlapping in area exactly 1/2.

use crate::error::{Error, Result};
use crate::geometry::cap::clip_polygon;
use crate::geometry::point::signed_area;
use crate::geometry::{ConvexBody, HalfPlane, Point, Slicer};

/// Accuracy of each consecutive overlap.
pub const OVERLAP_TOL: f64 = 1e-11;

struct UnitCaps<'a> {
    body: &'a ConvexBody,
}

impl UnitCaps<'_> {
    fn polygon(&self, g: f64) -> Vec<Point> {
        let s = Slicer::new(self.body, g);
        s.cap_polygon(&s.offset_for_area(1.0))
    }

    fn halfplane(&self, g: f64) -> HalfPlane {
        HalfPlane::new(g, Slicer::new(self.body, g).offset_for_area(1.0).offset)
    }

    fn overlap(&self, poly: &[Point], g: f64) -> f64 {
        signed_area(&clip_polygon(poly, &self.halfplane(g))).max(0.0)
    }
}

/// `γ_0 = α < γ_1 < … < γ_L ≤ β` with
/// `Area(C(1, γ_{i-1}) ∩ C(1, γ_i)) = 1/2`.
///
/// Fails when the body is too small or not even one step fits.
pub fn gamma_sequence(body: &ConvexBody, alpha: f64, beta: f64) -> Result<Vec<f64>> {
    if body.area() < 2.0 {
        return Err(Error::domain(format!("body area {} below 2", body.area())));
    }
    if !(beta > alpha) {
        return Err(Error::param("beta", "interval must have positive length"));
    }
    let caps = UnitCaps { body };
    let mut seq = vec![alpha];
    let mut g = alpha;
    loop {
        let poly = caps.polygon(g);
        let f = |x: f64| caps.overlap(&poly, x) - 0.5;
        // bracket: f decreases from 1/2 at x = g
        let mut step = 1e-3;
        let hi = loop {
            let x = g + step;
            if x > beta {
                break if f(beta) <= 0.0 { Some(beta) } else { None };
            }
            if f(x) <= 0.0 {
                break Some(x);
            }
            step *= 2.0;
        };
        let Some(mut hi) = hi else { break };
        let mut lo = (hi - step).max(g);
        if lo > hi {
            lo = g;
        }
        let mut x = hi;
        for _ in 0..200 {
            x = 0.5 * (lo + hi);
            let v = f(x);
            if v.abs() <= OVERLAP_TOL || hi - lo <= 1e-15 * (1.0 + x.abs()) {
                break;
            }
            if v > 0.0 {
                lo = x;
            } else {
                hi = x;
            }
        }
        if x > beta {
            break;
        }
        seq.push(x);
        g = x;
    }
    if seq.len() < 2 {
        return Err(Error::domain("interval too short for a single step of the sequence"));
    }
    Ok(seq)
}

/// `Area(C(1, γ) ∩ C(1, γ'))`.
pub fn unit_cap_overlap(body: &ConvexBody, g1: f64, g2: f64) -> f64 {
    let caps = UnitCaps { body };
    caps.overlap(&caps.polygon(g1), g2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{make_body, BodySpec};
    use std::f64::consts::TAU;

    #[test]
    fn disk_steps_are_equal() {
        let d = make_body(&BodySpec::new("disk").with("area", 1000.0).with("k", 1024.0)).unwrap();
        let seq = gamma_sequence(&d, 0.0, TAU).unwrap();
        let steps: Vec<f64> = seq.windows(2).map(|w| w[1] - w[0]).collect();
        let mean = steps.iter().sum::<f64>() / steps.len() as f64;
        for s in &steps {
            assert!((s - mean).abs() < 1e-3 * mean, "{steps:?}");
        }
    }

    #[test]
    fn overlaps_are_one_half() {
        let b = make_body(&"random:k=12,seed=3,area=500".parse().unwrap()).unwrap();
        let seq = gamma_sequence(&b, 0.4, 3.0).unwrap();
        for w in seq.windows(2) {
            assert!(w[1] > w[0]);
            assert!((unit_cap_overlap(&b, w[0], w[1]) - 0.5).abs() <= 1e-9);
        }
    }

    #[test]
    fn too_short_is_an_error() {
        let b = make_body(&BodySpec::new("disk").with("area", 1000.0).with("k", 256.0)).unwrap();
        assert!(gamma_sequence(&b, 0.0, 1e-4).is_err());
        let tiny = make_body(&BodySpec::new("square").with("side", 1.2)).unwrap();
        assert!(gamma_sequence(&tiny, 0.0, 1.0).is_err());
    }
}
