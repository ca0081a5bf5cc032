//! Andrew's monotone chain.

use super::point::Point;

fn lex(a: &Point, b: &Point) -> std::cmp::Ordering {
    a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y))
}

/// Strictly convex hull of `points` in counterclockwise order, starting at the
/// lexicographically smallest point. Collinear boundary points are dropped.
///
/// Degenerate inputs return the distinct extreme points: one point for a
/// single location, two for a collinear set.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(lex);
    pts.dedup_by(|a, b| a.x == b.x && a.y == b.y);
    if pts.len() <= 2 {
        return pts;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(pts.len() + 1);
    for &p in &pts {
        while hull.len() >= 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

#[inline]
fn turn(o: Point, a: Point, b: Point) -> f64 {
    (a - o).cross(b - o)
}

/// Gift wrapping (Jarvis march). O(nh); kept as an independent reference for
/// the monotone chain.
pub fn gift_wrap(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(lex);
    pts.dedup_by(|a, b| a.x == b.x && a.y == b.y);
    if pts.len() <= 2 {
        return pts;
    }
    let start = 0;
    let mut hull = vec![pts[start]];
    let mut current = start;
    loop {
        let mut candidate = if current == 0 { 1 } else { 0 };
        for (i, &p) in pts.iter().enumerate() {
            if i == current || i == candidate {
                continue;
            }
            let t = turn(pts[current], pts[candidate], p);
            // take the most clockwise point; among collinear ones the farthest
            if t < 0.0 || (t == 0.0 && pts[current].dist(p) > pts[current].dist(pts[candidate])) {
                candidate = i;
            }
        }
        if candidate == start {
            break;
        }
        if hull.len() > pts.len() {
            break;
        }
        hull.push(pts[candidate]);
        current = candidate;
    }
    if hull.len() >= 3 && signed_area_twice(&hull) == 0.0 {
        // all collinear: keep the two extremes
        return vec![pts[0], pts[pts.len() - 1]];
    }
    hull
}

fn signed_area_twice(p: &[Point]) -> f64 {
    super::point::twice_signed_area_about(p, p[0])
}
