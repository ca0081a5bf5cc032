//! The affine invariant measure `μ_K = f_K(e⁻¹, θ)² dθ`.
//!
//! The density is the squared chord length of the area-1 cap. It is smooth
//! except at the finitely many angles where a chord endpoint passes a vertex
//! of the polygon; those angles are computed directly (for each vertex, walk
//! the boundary fan from it until area 1 is enclosed) and used as forced
//! quadrature breakpoints.

use crate::error::{Error, Result};
use crate::geometry::point::normalize_angle;
use crate::geometry::{ConvexBody, Slicer};
use crate::numeric::adaptive_simpson;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// Relative tolerance of μ-integrals.
pub const MU_REL_TOL: f64 = 1e-8;

fn check_area(body: &ConvexBody) -> Result<()> {
    if body.area() <= 1.0 {
        return Err(Error::domain(format!(
            "body area {} must exceed 1 for area-1 caps to exist",
            body.area()
        )));
    }
    Ok(())
}

#[inline]
fn density_unchecked(body: &ConvexBody, theta: f64) -> f64 {
    let lv = Slicer::new(body, theta).offset_for_area(1.0);
    let c = lv.chord_length();
    c * c
}

/// `f_K(e⁻¹, θ)²`.
pub fn mu_density(body: &ConvexBody, theta: f64) -> Result<f64> {
    check_area(body)?;
    Ok(density_unchecked(body, theta))
}

/// Angles in `[0, 2π)` at which an endpoint of the area-1 chord sits on a
/// vertex, sorted, duplicates merged.
pub fn kink_angles(body: &ConvexBody) -> Result<Vec<f64>> {
    check_area(body)?;
    let n = body.len();
    let mut out = Vec::with_capacity(2 * n);
    for j in 0..n {
        let v = body.vertex(j);
        // counterclockwise: v is the back endpoint
        let mut acc = 0.0;
        for s in 1..n {
            let a = body.vertex(j + s) - v;
            let b = body.vertex(j + s + 1) - v;
            let tri = 0.5 * a.cross(b);
            if acc + tri >= 1.0 {
                let t = (1.0 - acc) / tri;
                out.push(normalize_angle((a.lerp(b, t)).angle()));
                break;
            }
            acc += tri;
        }
        // clockwise: v is the front endpoint
        let mut acc = 0.0;
        for s in 1..n {
            let a = body.vertex(j + n - s) - v;
            let b = body.vertex(j + 2 * n - s - 1) - v;
            let tri = 0.5 * b.cross(a);
            if acc + tri >= 1.0 {
                let t = (1.0 - acc) / tri;
                out.push(normalize_angle((-(a.lerp(b, t))).angle()));
                break;
            }
            acc += tri;
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    Ok(out)
}

/// Interval `[α, β]` on ℝ/2π as a real interval with `β' ≥ α`. An interval
/// given with `β < α` wraps through 2π.
fn unwrap_interval(alpha: f64, beta: f64) -> (f64, f64) {
    if beta >= alpha {
        (alpha, beta)
    } else {
        (alpha, alpha + normalize_angle(beta - alpha))
    }
}

/// `μ_K([α, β])` by adaptive Simpson with forced breaks at the kink angles.
/// For repeated queries on one body build a [`MeasureProfile`] instead.
pub fn mu_interval(body: &ConvexBody, alpha: f64, beta: f64) -> Result<f64> {
    let kinks = kink_angles(body)?;
    let (a, b) = unwrap_interval(alpha, beta);
    if b == a {
        return Ok(0.0);
    }
    let mut knots = vec![a];
    let first_turn = (a / TAU).floor() as i64;
    let last_turn = (b / TAU).ceil() as i64;
    for turn in first_turn..=last_turn {
        for &k in &kinks {
            let x = k + turn as f64 * TAU;
            if x > a && x < b {
                knots.push(x);
            }
        }
    }
    knots.push(b);
    knots.sort_by(f64::total_cmp);
    let scale = density_scale(body, a, b);
    let tol = 0.1 * MU_REL_TOL * scale;
    let mut total = 0.0;
    for w in knots.windows(2) {
        if w[1] > w[0] {
            total += adaptive_simpson(|t| density_unchecked(body, t), w[0], w[1], tol * (w[1] - w[0]) / (b - a))
                .value;
        }
    }
    Ok(total)
}

/// Rough size of `∫_a^b density`, used to turn the relative tolerance into an
/// absolute one.
fn density_scale(body: &ConvexBody, a: f64, b: f64) -> f64 {
    let m = 16;
    let mean = (0..m)
        .map(|i| density_unchecked(body, a + (i as f64 + 0.5) * (b - a) / m as f64))
        .sum::<f64>()
        / m as f64;
    mean * (b - a)
}

/// Cumulative μ over one turn, with the density integrated piecewise between
/// kink angles.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeasureProfile {
    pub body_id: u64,
    /// Piece boundaries `0 = t_0 < t_1 < … < t_m = 2π`.
    breaks: Vec<f64>,
    /// `cumulative[i] = μ([0, t_i])`.
    cumulative: Vec<f64>,
    /// `(θ, density)` at every break.
    pub samples: Vec<(f64, f64)>,
    pub total_mu: f64,
    #[serde(skip)]
    body: Option<ConvexBody>,
}

impl MeasureProfile {
    pub fn new(body: &ConvexBody) -> Result<Self> {
        let kinks = kink_angles(body)?;
        let mut breaks = Vec::with_capacity(kinks.len() + 2);
        breaks.push(0.0);
        breaks.extend(kinks.into_iter().filter(|&k| k > 0.0 && k < TAU));
        breaks.push(TAU);
        breaks.dedup();
        // coarse total from the break densities to size the tolerance
        let samples: Vec<(f64, f64)> = breaks.iter().map(|&t| (t, density_unchecked(body, t))).collect();
        let coarse: f64 = samples.windows(2).map(|w| 0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0)).sum();
        let coarse = if coarse > 0.0 { coarse } else { density_scale(body, 0.0, TAU) };
        let tol = 0.1 * MU_REL_TOL * coarse / TAU;
        let mut cumulative = Vec::with_capacity(breaks.len());
        cumulative.push(0.0);
        let mut acc = 0.0;
        for w in breaks.windows(2) {
            acc += adaptive_simpson(|t| density_unchecked(body, t), w[0], w[1], tol * (w[1] - w[0])).value;
            cumulative.push(acc);
        }
        Ok(MeasureProfile { body_id: body.id(), breaks, cumulative, samples, total_mu: acc, body: Some(body.clone()) })
    }

    pub fn body(&self) -> &ConvexBody {
        self.body.as_ref().expect("profile carries its body")
    }

    pub fn total(&self) -> f64 {
        self.total_mu
    }

    /// Number of smooth pieces of the density.
    pub fn pieces(&self) -> usize {
        self.breaks.len() - 1
    }

    pub fn density(&self, theta: f64) -> f64 {
        density_unchecked(self.body(), theta)
    }

    fn piece_of(&self, t: f64) -> usize {
        (self.breaks.partition_point(|&b| b <= t).max(1) - 1).min(self.pieces() - 1)
    }

    fn partial(&self, i: usize, t: f64) -> f64 {
        let lo = self.breaks[i];
        if t <= lo {
            return 0.0;
        }
        let width = self.breaks[i + 1] - lo;
        let piece = self.cumulative[i + 1] - self.cumulative[i];
        let tol = 0.1 * MU_REL_TOL * piece.max(f64::MIN_POSITIVE) * ((t - lo) / width).max(1e-3);
        adaptive_simpson(|s| self.density(s), lo, t, tol).value
    }

    /// `μ([0, θ])` extended to all of ℝ by `F(θ + 2π) = F(θ) + total`.
    pub fn cumulative(&self, theta: f64) -> f64 {
        let turns = (theta / TAU).floor();
        let mut t = theta - turns * TAU;
        if t >= TAU {
            t -= TAU;
        }
        let i = self.piece_of(t);
        let within = if t == self.breaks[i] { 0.0 } else { self.partial(i, t) };
        turns * self.total_mu + self.cumulative[i] + within
    }

    /// `μ([α, β])`, wrapping through 2π when `β < α`.
    pub fn interval(&self, alpha: f64, beta: f64) -> f64 {
        let (a, b) = unwrap_interval(alpha, beta);
        if a == b {
            return 0.0;
        }
        (self.cumulative(b) - self.cumulative(a)).max(0.0)
    }

    /// Smallest θ with `F(θ) = target`, for any real target.
    pub fn inverse_cumulative(&self, target: f64) -> f64 {
        let turns = (target / self.total_mu).floor();
        let mut r = target - turns * self.total_mu;
        if r >= self.total_mu {
            r -= self.total_mu;
        }
        let i = (self.cumulative.partition_point(|&c| c <= r).max(1) - 1).min(self.pieces() - 1);
        let (mut lo, mut hi) = (self.breaks[i], self.breaks[i + 1]);
        let need = r - self.cumulative[i];
        // safeguarded Newton: F' = density
        let mut t = lo + (hi - lo) * (need / (self.cumulative[i + 1] - self.cumulative[i]).max(f64::MIN_POSITIVE));
        for _ in 0..100 {
            let g = self.partial(i, t) - need;
            if g.abs() <= 1e-13 * self.total_mu {
                break;
            }
            if g > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let d = self.density(t);
            let mut next = t - g / d;
            if !(next > lo && next < hi) || d <= 0.0 {
                next = 0.5 * (lo + hi);
            }
            if next == t || hi - lo <= 4.0 * f64::EPSILON * TAU {
                break;
            }
            t = next;
        }
        t + turns * TAU
    }

    /// `L` intervals of equal μ-weight starting at `start`.
    pub fn equal_partition(&self, l: usize, start: f64) -> Result<AngularPartition> {
        if l == 0 {
            return Err(Error::param("L", "partition needs at least one interval"));
        }
        let start = normalize_angle(start);
        let f0 = self.cumulative(start);
        let step = self.total_mu / l as f64;
        let mut angles = Vec::with_capacity(l);
        angles.push(start);
        for i in 1..l {
            angles.push(self.inverse_cumulative(f0 + i as f64 * step));
        }
        let weights = (0..l)
            .map(|i| {
                let b = if i + 1 < l { angles[i + 1] } else { start + TAU };
                self.cumulative(b) - self.cumulative(angles[i])
            })
            .collect();
        AngularPartition::new(angles, weights)
    }

    /// α with `μ([α, α+π]) = total/2` (0 when 0 already balances).
    pub fn balanced_axis(&self) -> f64 {
        let half = 0.5 * self.total_mu;
        let g = |a: f64| self.interval(a, a + PI) - half;
        let tol = 1e-9 * self.total_mu;
        let g0 = g(0.0);
        if g0.abs() <= tol {
            return 0.0;
        }
        // g(α + π) = -g(α), so [0, π] brackets a root
        let (mut lo, mut hi) = (0.0, PI);
        let mut mid = 0.5 * PI;
        for _ in 0..200 {
            mid = 0.5 * (lo + hi);
            let gm = g(mid);
            if gm.abs() <= tol || hi - lo <= 1e-15 {
                break;
            }
            if gm.signum() == g0.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        mid
    }

    /// `𝔡(α, β)`: μ of the shorter way round, `[α, β]` if `β ∈ [α, α+π]`,
    /// otherwise `[β, α]`.
    pub fn distance(&self, alpha: f64, beta: f64) -> f64 {
        let d = normalize_angle(beta - alpha);
        if d <= PI {
            self.interval(alpha, alpha + d)
        } else {
            self.interval(beta, beta + (TAU - d))
        }
    }
}

/// Equal-μ partition of ℝ/2π into `L` intervals starting at angle 0.
pub fn partition_equal_mu(body: &ConvexBody, l: usize) -> Result<AngularPartition> {
    MeasureProfile::new(body)?.equal_partition(l, 0.0)
}

/// α with `μ([α, α+π]) = μ([α+π, α+2π])`.
pub fn balanced_axis(body: &ConvexBody) -> Result<f64> {
    Ok(MeasureProfile::new(body)?.balanced_axis())
}

/// `𝔡_K(α, β)`.
pub fn mu_distance(body: &ConvexBody, alpha: f64, beta: f64) -> Result<f64> {
    let d = normalize_angle(beta - alpha);
    if d == 0.0 {
        return Ok(0.0);
    }
    if d <= PI {
        mu_interval(body, alpha, alpha + d)
    } else {
        mu_interval(body, beta, beta + (TAU - d))
    }
}

/// Angles `α_1 < … < α_L` (unwrapped, all within one turn of `α_1`) with
/// the μ-weight of each interval `[α_i, α_{i+1})`, the last one wrapping to
/// `α_1 + 2π`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngularPartition {
    angles: Vec<f64>,
    mu_weights: Vec<f64>,
}

impl AngularPartition {
    pub fn new(angles: Vec<f64>, mu_weights: Vec<f64>) -> Result<Self> {
        if angles.is_empty() {
            return Err(Error::param("L", "partition needs at least one interval"));
        }
        if angles.len() != mu_weights.len() {
            return Err(Error::param("mu_weights", "one weight per interval"));
        }
        if angles.windows(2).any(|w| !(w[1] > w[0])) || angles[angles.len() - 1] >= angles[0] + TAU {
            return Err(Error::param("angles", "must increase strictly within one turn"));
        }
        if mu_weights.iter().any(|&w| !(w > 0.0)) {
            return Err(Error::param("mu_weights", "must be positive"));
        }
        Ok(AngularPartition { angles, mu_weights })
    }

    /// `L` equally spaced angles starting at `start`, each with weight
    /// `total / L` (exact for rotation-invariant measures only).
    pub fn uniform(l: usize, start: f64, total: f64) -> Result<Self> {
        let l_f = l as f64;
        let angles = (0..l).map(|i| start + TAU * i as f64 / l_f).collect();
        AngularPartition::new(angles, vec![total / l_f; l])
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn mu_weights(&self) -> &[f64] {
        &self.mu_weights
    }

    pub fn total(&self) -> f64 {
        self.mu_weights.iter().sum()
    }

    /// `[α_i, α_{i+1})` unwrapped so that the end exceeds the start.
    pub fn interval(&self, i: usize) -> (f64, f64) {
        let l = self.angles.len();
        let a = self.angles[i];
        let b = if i + 1 < l { self.angles[i + 1] } else { self.angles[0] + TAU };
        (a, b)
    }

    /// Index of the interval containing θ (half-open intervals).
    pub fn locate(&self, theta: f64) -> usize {
        let a0 = self.angles[0];
        let t = a0 + normalize_angle(theta - a0);
        self.angles.partition_point(|&a| a <= t).max(1) - 1
    }
}
