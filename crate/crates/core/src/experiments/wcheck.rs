//! Law of the support vertex `W(θ)`.
//!
//! A point `p` is `W(θ)` exactly when the open cap beyond the line through
//! `p` at angle θ is empty, so the offset `t = n·W − min_K n·x` has density
//! `ℓ(t) e^{−A(t)}`, with `ℓ` the chord length and `A` the cap area. The CDF
//! is integrated numerically here; since `A' = ℓ`, `1 − e^{−A(t)}` is a
//! closed form used as a cross-check only.

use super::reports::{num, ReportConfig, ReportTable};
use super::thresholds::WcheckThresholds;
use super::trials::Experiment;
use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Slicer};
use crate::numeric::adaptive_simpson_with_breaks;
use crate::process::hull_support_vertex;
use serde_json::Value;

pub const MIN_TRIALS: u64 = 10_000;

/// Absolute quadrature tolerance per integration call.
const QUAD_TOL: f64 = 1e-13;

/// `ℓ(t) e^{−A(t)}` with its kinks (the body's vertex offsets).
pub struct OffsetDensity<'a> {
    slicer: Slicer<'a>,
    s_min: f64,
    span: f64,
    kinks: Vec<f64>,
}

impl<'a> OffsetDensity<'a> {
    pub fn new(body: &'a ConvexBody, theta: f64) -> Self {
        let slicer = Slicer::new(body, theta);
        let (s_min, s_max) = slicer.offset_range();
        let n = slicer.normal();
        let mut kinks: Vec<f64> = body
            .vertices()
            .iter()
            .map(|v| v.dot(n) - s_min)
            .filter(|&t| t > 0.0 && t < s_max - s_min)
            .collect();
        kinks.sort_by(f64::total_cmp);
        OffsetDensity { slicer, s_min, span: s_max - s_min, kinks }
    }

    pub fn span(&self) -> f64 {
        self.span
    }

    pub fn s_min(&self) -> f64 {
        self.s_min
    }

    pub fn density(&self, t: f64) -> f64 {
        let c = self.s_min + t;
        match self.slicer.level(c) {
            Some(lv) => lv.chord_length() * (-self.slicer.area_fast(&lv)).exp(),
            None => 0.0,
        }
    }

    /// `∫_a^b ℓ e^{−A}`.
    pub fn integrate(&self, a: f64, b: f64) -> f64 {
        let (a, b) = (a.clamp(0.0, self.span), b.clamp(0.0, self.span));
        if b <= a {
            return 0.0;
        }
        let i = self.kinks.partition_point(|&k| k <= a);
        let j = self.kinks.partition_point(|&k| k < b);
        let pieces = (j - i + 1) as f64;
        adaptive_simpson_with_breaks(|t| self.density(t), a, b, &self.kinks[i..j], QUAD_TOL * pieces).value
    }

    pub fn closed_form_cdf(&self, t: f64) -> f64 {
        -(-self.slicer.cap_area_exact(self.s_min + t)).exp_m1()
    }

    /// Offset at which the closed-form CDF reaches `q · (1 − e^{−area})`.
    fn quantile(&self, q: f64) -> f64 {
        let area = self.slicer.body().area();
        let r = -(-q * (-(-area).exp_m1())).ln_1p();
        self.slicer.offset_for_area(r).offset - self.s_min
    }
}

pub fn w_marginal_report(config: &ReportConfig) -> Result<ReportTable> {
    let spec = config.single_body("wcheck")?;
    if config.trials < MIN_TRIALS {
        return Err(Error::param("trials", format!("the vertex-marginal check needs at least {MIN_TRIALS} trials")));
    }
    if config.bins < 2 {
        return Err(Error::param("bins", "need at least two bins"));
    }
    let exp = Experiment::new(&config.trial_config(spec, 0))?;
    let theta = config.theta;
    let dens = OffsetDensity::new(&exp.body, theta);
    let n = dens.slicer.normal();
    let offsets: Vec<Option<f64>> = exp.map(config.seed, config.trials, |_, h| {
        if h.degenerate {
            None
        } else {
            hull_support_vertex(&h, theta).ok().map(|w| w.dot(n) - dens.s_min)
        }
    });
    let mut xs: Vec<f64> = offsets.iter().flatten().copied().collect();
    let degenerate = offsets.len() - xs.len();
    w_marginal_table(&dens, &mut xs, degenerate, config.bins, theta, &config.thresholds.wcheck)
}

pub fn w_marginal_table(
    dens: &OffsetDensity<'_>,
    xs: &mut [f64],
    degenerate: usize,
    bins: usize,
    theta: f64,
    th: &WcheckThresholds,
) -> Result<ReportTable> {
    if xs.len() < 2 {
        return Err(Error::Degenerate("too few non-degenerate trials".into()));
    }
    xs.sort_by(f64::total_cmp);
    let area = dens.slicer.body().area();
    let norm = -(-area).exp_m1();
    let mass_total = dens.integrate(0.0, dens.span);

    // numerically integrated CDF at every order statistic
    let mut cdf = Vec::with_capacity(xs.len());
    let mut acc = 0.0;
    let mut prev = 0.0;
    let mut closed_dev: f64 = 0.0;
    for &x in xs.iter() {
        acc += dens.integrate(prev, x);
        prev = x.max(prev);
        cdf.push(acc / norm);
        closed_dev = closed_dev.max((acc - dens.closed_form_cdf(x)).abs());
    }
    let mf = xs.len() as f64;
    let ks = cdf
        .iter()
        .enumerate()
        .map(|(i, &f)| (((i + 1) as f64 / mf) - f).abs().max((f - i as f64 / mf).abs()))
        .fold(0.0f64, f64::max);

    let m = xs.len() as f64;
    let mut edges = vec![0.0];
    edges.extend((1..bins).map(|i| dens.quantile(i as f64 / bins as f64)));
    edges.push(dens.span);
    let mut t = ReportTable::new("wcheck", &["bin", "lo", "hi", "observed", "expected", "expected_closed_form"]);
    let mut chi2 = 0.0;
    for b in 0..bins {
        let (lo, hi) = (edges[b], edges[b + 1]);
        let observed = xs.partition_point(|&x| x < hi) - xs.partition_point(|&x| x < lo);
        let observed = if b + 1 == bins { xs.len() - xs.partition_point(|&x| x < lo) } else { observed };
        let expected = m * dens.integrate(lo, hi) / norm;
        let closed = m * (dens.closed_form_cdf(hi) - dens.closed_form_cdf(lo)) / norm;
        chi2 += (observed as f64 - expected).powi(2) / expected;
        t.push(vec![Value::from(b), num(lo), num(hi), Value::from(observed), num(expected), num(closed)]);
    }
    t.note("theta", num(theta));
    t.note("trials_used", xs.len());
    t.note("degenerate", degenerate);
    t.note("mass_total", num(mass_total));
    t.note("mass_expected", num(norm));
    t.note("closed_form_max_dev", num(closed_dev));
    t.note("chi2", num(chi2));
    t.note("dof", bins - 1);
    t.note("ks", num(ks));
    t.flag(&format!("ks_below_{}", th.ks_max), ks < th.ks_max);
    t.flag(&format!("mass_within_{}", th.mass_tol), (mass_total - norm).abs() <= th.mass_tol);
    Ok(t)
}
