//! Wet and dry parts.
//!
//! The ε-wet part over `[α, β]` is `⋃_γ C(ε, γ)`; its complement in `K` is the
//! convex dry part `K ∩ ⋂_γ (closure of H_γ's complement)`, approximated by
//! clipping `K` against the complements on a uniform γ-grid. The grid dry part
//! contains the true one, so the wet area converges from below, with error
//! `O(Δγ²)`.

use crate::error::{Error, Result};
use crate::geometry::cap::clip_polygon;
use crate::geometry::point::signed_area;
use crate::geometry::{ConvexBody, HalfPlane, Point, Slicer};
use std::f64::consts::{PI, TAU};

/// Default number of clipping angles per π of arc.
pub const DRY_GRID_PER_PI: usize = 4096;

fn check(body: &ConvexBody, eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 0.5 * body.area()) {
        return Err(Error::param("eps", format!("{eps} not in (0, area/2 = {})", 0.5 * body.area())));
    }
    Ok(())
}

/// The angles used for `[α, β]`: both endpoints and a uniform grid between.
fn grid(alpha: f64, beta: f64, per_pi: usize) -> Vec<f64> {
    let span = (beta - alpha).min(TAU);
    let steps = ((span / PI) * per_pi as f64).ceil().max(1.0) as usize;
    (0..=steps).map(|i| alpha + span * i as f64 / steps as f64).collect()
}

/// The dry-part polygon over `[α, β]` (counterclockwise vertices; empty if
/// the wet part covers everything).
pub fn dry_part(body: &ConvexBody, eps: f64, alpha: f64, beta: f64, per_pi: usize) -> Result<Vec<Point>> {
    check(body, eps)?;
    let beta = if beta < alpha { alpha + crate::geometry::normalize_angle(beta - alpha) } else { beta };
    let mut poly = body.vertices().to_vec();
    for g in grid(alpha, beta, per_pi.max(1)) {
        let c = Slicer::new(body, g).offset_for_area(eps).offset;
        poly = clip_polygon(&poly, &HalfPlane::new(g, c).complement());
        if poly.len() < 3 {
            poly.clear();
            break;
        }
    }
    Ok(poly)
}

/// The dry part over the full circle on an angle sequence adapted to the
/// chord length `c(γ)` of the ε-cap: consecutive angles differ by at most
/// `min(max_step, sweep / c²)`, so that the area swept between neighbouring
/// caps stays below `sweep / 8`-ish everywhere, however long the chords.
pub fn dry_part_adaptive(body: &ConvexBody, eps: f64, max_step: f64, sweep: f64) -> Result<Vec<Point>> {
    check(body, eps)?;
    let mut poly = body.vertices().to_vec();
    let mut g = 0.0;
    loop {
        let slicer = Slicer::new(body, g);
        let lv = slicer.offset_for_area(eps);
        poly = clip_polygon(&poly, &HalfPlane::new(g, lv.offset).complement());
        if poly.len() < 3 {
            poly.clear();
            break;
        }
        if g >= TAU {
            break;
        }
        let c = lv.chord_length();
        let step = max_step.min(sweep / (c * c).max(f64::MIN_POSITIVE));
        g = (g + step).min(TAU);
    }
    Ok(poly)
}

/// `Area(⋃_{γ∈[α,β]} C(ε, γ))` with the default grid.
pub fn wet_area(body: &ConvexBody, eps: f64, alpha: f64, beta: f64) -> Result<f64> {
    wet_area_with_grid(body, eps, alpha, beta, DRY_GRID_PER_PI)
}

pub fn wet_area_with_grid(body: &ConvexBody, eps: f64, alpha: f64, beta: f64, per_pi: usize) -> Result<f64> {
    check(body, eps)?;
    if beta == alpha {
        return Ok(eps);
    }
    let dry = dry_part(body, eps, alpha, beta, per_pi)?;
    Ok(body.area() - signed_area(&dry).max(0.0))
}
