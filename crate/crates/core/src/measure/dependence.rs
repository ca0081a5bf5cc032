//! `∫_K exp(−A(p,θ) − A(p,ψ)) dp` on a midpoint grid.

use crate::geometry::{ConvexBody, Point, Slicer};
use serde::{Deserialize, Serialize};

pub const DEPENDENCE_GRID: usize = 512;

/// Value of the mixing integral. The integrand underflows for distant
/// angles, so the sum is carried in log space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DependenceBound {
    pub value: f64,
    pub log_value: f64,
    /// `|I(h) − I(2h)|`, the step-halving difference.
    pub error_estimate: f64,
    pub grid: usize,
}

struct LogSum {
    max: f64,
    sum: f64,
}

impl LogSum {
    fn new() -> Self {
        LogSum { max: f64::NEG_INFINITY, sum: 0.0 }
    }

    fn add(&mut self, x: f64) {
        if x <= self.max {
            self.sum += (x - self.max).exp();
        } else {
            self.sum = self.sum * (self.max - x).exp() + 1.0;
            self.max = x;
        }
    }

    fn log(&self) -> f64 {
        if self.sum == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.max + self.sum.ln()
        }
    }
}

fn log_grid_integral(body: &ConvexBody, s1: &Slicer, s2: &Slicer, m: usize) -> f64 {
    let (lo, hi) = body.bounding_box();
    let dx = (hi.x - lo.x) / m as f64;
    let dy = (hi.y - lo.y) / m as f64;
    let (n1, n2) = (s1.normal(), s2.normal());
    let mut acc = LogSum::new();
    for i in 0..m {
        let x = lo.x + (i as f64 + 0.5) * dx;
        for j in 0..m {
            let p = Point::new(x, lo.y + (j as f64 + 0.5) * dy);
            if !body.contains(p) {
                continue;
            }
            acc.add(-s1.cap_area_fast(n1.dot(p)) - s2.cap_area_fast(n2.dot(p)));
        }
    }
    acc.log() + (dx * dy).ln()
}

pub fn dependence_bound(body: &ConvexBody, theta: f64, psi: f64) -> DependenceBound {
    dependence_bound_with_grid(body, theta, psi, DEPENDENCE_GRID)
}

pub fn dependence_bound_with_grid(body: &ConvexBody, theta: f64, psi: f64, m: usize) -> DependenceBound {
    let m = m.max(2);
    let s1 = Slicer::new(body, theta);
    let s2 = Slicer::new(body, psi);
    let fine = log_grid_integral(body, &s1, &s2, m);
    let coarse = log_grid_integral(body, &s1, &s2, m / 2);
    let value = fine.exp();
    let error_estimate = if fine.is_finite() && coarse.is_finite() {
        value * (coarse - fine).exp_m1().abs()
    } else {
        value
    };
    DependenceBound { value, log_value: fine, error_estimate, grid: m }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{make_body, BodySpec};
    use std::f64::consts::PI;

    #[test]
    fn same_angle_matches_slicing() {
        let sq = make_body(&BodySpec::new("square").with("side", 10.0)).unwrap();
        let want = 0.5 * (1.0 - (-2.0f64 * 100.0).exp());
        let got = dependence_bound(&sq, 0.3, 0.3);
        assert!(((got.value - want) / want).abs() < 0.01, "{got:?}");
        assert!((got.value - want).abs() < 3.0 * got.error_estimate + 1e-3);
    }

    #[test]
    fn antipodal_angles_give_area_term() {
        // A(p,θ) + A(p,θ+π) = area for every p
        let sq = make_body(&BodySpec::new("square").with("side", 30.0)).unwrap();
        let got = dependence_bound_with_grid(&sq, 0.2, 0.2 + PI, 128);
        let want = (900.0f64).ln() - 900.0;
        assert!((got.log_value - want).abs() < 1e-6, "{got:?}");
    }

    #[test]
    fn symmetric_in_its_angles() {
        let b = make_body(&"random:k=10,seed=5,area=150".parse().unwrap()).unwrap();
        let a = dependence_bound_with_grid(&b, 0.4, 1.3, 128);
        let c = dependence_bound_with_grid(&b, 1.3, 0.4, 128);
        assert!((a.log_value - c.log_value).abs() < 1e-12);
    }
}
