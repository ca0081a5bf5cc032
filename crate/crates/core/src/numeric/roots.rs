//! Bracketing root finders for monotone scalar functions.

/// Outcome of a bracketed search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Bisection on `[lo, hi]` for a function that changes sign on the bracket.
///
/// Stops once the bracket is narrower than `x_tol` or the function value is
/// exactly zero. Returns `None` when the endpoints do not bracket a root.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, x_tol: f64, max_iter: usize) -> Option<Root>
where
    F: FnMut(f64) -> f64,
{
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Some(Root { x: lo, value: 0.0, iterations: 0 });
    }
    if f_hi == 0.0 {
        return Some(Root { x: hi, value: 0.0, iterations: 0 });
    }
    if f_lo.signum() == f_hi.signum() {
        return None;
    }
    let mut iterations = 0;
    while iterations < max_iter {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= x_tol {
            break;
        }
        let f_mid = f(mid);
        iterations += 1;
        if f_mid == 0.0 {
            return Some(Root { x: mid, value: 0.0, iterations });
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    Some(Root { x, value: f(x), iterations })
}

/// Solve `f(x) = target` for a nondecreasing `f` on `[lo, hi]`.
///
/// The target is clamped to the bracket: if `f(lo) >= target` the lower end is
/// returned, if `f(hi) <= target` the upper end.
pub fn solve_increasing<F>(mut f: F, target: f64, lo: f64, hi: f64, x_tol: f64) -> f64
where
    F: FnMut(f64) -> f64,
{
    let (mut lo, mut hi) = (lo, hi);
    if f(lo) >= target {
        return lo;
    }
    if f(hi) <= target {
        return hi;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= x_tol {
            break;
        }
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
