//! Angular decomposition of `N` and `A`.
//!
//! For a partition `α_1 < … < α_L`, sector `i` gets the hull edges with angle
//! in `[α_i, α_{i+1})` and the part of `K ∖ Π` cut off by the forward tangent
//! rays: from `W(α)` along direction α to the exit point `e(α) ∈ ∂K`. Region
//! `i` is bounded by the hull chain `W(α_i) → W(α_{i+1})`, the ray segment to
//! `e(α_{i+1})`, the boundary of `K` back (clockwise) to `e(α_i)`, and the ray
//! segment back to `W(α_i)`. The rays are shared by neighbouring sectors, so
//! the pieces tile `K ∖ Π`.

use super::hull::HullResult;
use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Point, Slicer};
use crate::measure::AngularPartition;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectorValues {
    pub partition: AngularPartition,
    pub n: Vec<usize>,
    pub a: Vec<f64>,
}

struct Cut {
    hull_index: usize,
    exit: Point,
    /// Edge of `K` containing the exit point.
    edge: usize,
    /// Position of the exit along that edge, in `[0, 1]`.
    along: f64,
}

fn cut(body: &ConvexBody, hull: &HullResult, theta: f64) -> Result<Cut> {
    let hull_index = hull.support_index(theta)?;
    let w = hull.vertex(hull_index);
    let slicer = Slicer::new(body, theta);
    let c = slicer.normal().dot(w);
    let (exit, edge) = match slicer.level(c) {
        Some(lv) => (lv.front, slicer.front_edge(&lv)),
        None => {
            // W touches the tangent line of K itself
            let (lo, _) = slicer.offset_range();
            let k = if c <= lo { slicer.low_index() } else { body.support_index(theta + std::f64::consts::PI) };
            (body.vertex(k), (k + body.len() - 1) % body.len())
        }
    };
    let a = body.vertex(edge);
    let b = body.vertex(edge + 1);
    let d = b - a;
    let along = ((exit - a).dot(d) / d.dot(d)).clamp(0.0, 1.0);
    Ok(Cut { hull_index, exit, edge, along })
}

/// `(N_i, A_i)` for every sector of the partition.
pub fn sector_functionals(body: &ConvexBody, hull: &HullResult, partition: &AngularPartition) -> Result<SectorValues> {
    if hull.degenerate {
        return Err(Error::Degenerate("sector functionals need a non-degenerate hull".into()));
    }
    let l = partition.len();
    let mut n = vec![0usize; l];
    for &e in &hull.edge_angles {
        n[partition.locate(e)] += 1;
    }

    let o = body.centroid();
    let m = hull.len();
    // prefix cross sums of the hull about o over doubled indices
    let mut hp = Vec::with_capacity(2 * m + 1);
    hp.push(0.0);
    let mut acc = 0.0;
    for k in 0..2 * m {
        acc += (hull.vertex(k) - o).cross(hull.vertex(k + 1) - o);
        hp.push(acc);
    }
    let nk = body.len();
    let cuts = partition.angles().iter().map(|&t| cut(body, hull, t)).collect::<Result<Vec<_>>>()?;
    let mut a = Vec::with_capacity(l);
    for i in 0..l {
        let (ci, cj) = (&cuts[i], &cuts[(i + 1) % l]);
        let hull_steps = if l == 1 { m } else { (cj.hull_index + m - ci.hull_index) % m };
        let hull_chain = hp[ci.hull_index + hull_steps] - hp[ci.hull_index];
        let wi = hull.vertex(ci.hull_index) - o;
        let wj = hull.vertex(cj.hull_index) - o;
        let (ei, ej) = (ci.exit - o, cj.exit - o);
        // counterclockwise boundary path of K from e_i to e_j
        let mut k_steps = (cj.edge + nk - ci.edge) % nk;
        if k_steps == 0 && (l == 1 || cj.along < ci.along) {
            k_steps = nk;
        }
        let k_path = if k_steps == 0 {
            ei.cross(ej)
        } else {
            let first = body.vertex(ci.edge + 1) - o;
            let last = body.vertex(ci.edge + k_steps) - o;
            ei.cross(first) + body.chain_twice_area_about(ci.edge + 1, k_steps - 1, o) + last.cross(ej)
        };
        let twice = hull_chain + wj.cross(ej) - k_path + ei.cross(wi);
        a.push(-0.5 * twice);
    }
    Ok(SectorValues { partition: partition.clone(), n, a })
}
