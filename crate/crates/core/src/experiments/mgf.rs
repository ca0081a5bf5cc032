//! Empirical exponential moments of sector functionals.

use super::reports::{num, ReportConfig, ReportTable};
use super::stats::{MomentSummary, Z95};
use super::trials::Experiment;
use crate::error::{Error, Result};
use crate::measure::{AngularPartition, MeasureProfile};
use crate::process::sector_functionals;
use serde_json::Value;
use std::f64::consts::TAU;

/// `[α, β]` with `α < β < α + 2π` and its measure.
#[derive(Clone, Copy, Debug)]
struct Arc {
    alpha: f64,
    beta: f64,
    mu: f64,
}

fn arcs(config: &ReportConfig, profile: &MeasureProfile) -> Result<Vec<Arc>> {
    let m0 = config.thresholds.mgf.m0_proxy;
    let list: Vec<(f64, f64)> = if config.intervals.is_empty() {
        [1.0, 2.0, 4.0]
            .iter()
            .map(|k| (0.0, profile.inverse_cumulative(profile.cumulative(0.0) + k * m0)))
            .collect()
    } else {
        config.intervals.clone()
    };
    list.into_iter()
        .map(|(a, b)| {
            let mut beta = b;
            while beta <= a {
                beta += TAU;
            }
            while beta >= a + TAU {
                beta -= TAU;
            }
            let mu = profile.interval(a, beta);
            if mu < m0 * (1.0 - 1e-9) {
                return Err(Error::param("interval", format!("[{a}, {b}] has μ = {mu}, below the M₀ proxy {m0}")));
            }
            if mu >= profile.total() * (1.0 - 1e-12) {
                return Err(Error::param("interval", format!("[{a}, {b}] covers the whole circle")));
            }
            Ok(Arc { alpha: a, beta, mu })
        })
        .collect()
}

pub fn mgf_report(config: &ReportConfig) -> Result<ReportTable> {
    let th = &config.thresholds.mgf;
    if config.bodies.is_empty() {
        return Err(Error::param("body", "at least one body is required"));
    }
    if let Some(k) = config.lambdas.iter().find(|k| !(k.abs() <= 1.0)) {
        return Err(Error::param("lambda", format!("multiple {k} exceeds |λ| μ ≤ ε̂")));
    }
    let mut t = ReportTable::new(
        "mgf",
        &["body", "alpha", "beta", "mu", "functional", "lambda", "lambda_mu", "mgf", "ci_lo", "ci_hi", "mean_x"],
    );
    let mut below_cap = true;
    let mut zero_is_one = true;
    let mut increasing = true;
    let mut worst: f64 = 0.0;
    let mut lambdas = config.lambdas.clone();
    lambdas.sort_by(f64::total_cmp);
    lambdas.dedup();
    for spec in &config.bodies {
        let exp = Experiment::new(&config.trial_config(spec, 0))?;
        let profile = MeasureProfile::new(&exp.body)?;
        let arcs = arcs(config, &profile)?;
        let parts = arcs
            .iter()
            .map(|a| AngularPartition::new(vec![a.alpha, a.beta], vec![a.mu, profile.total() - a.mu]))
            .collect::<Result<Vec<_>>>()?;
        let values: Vec<Option<Vec<(f64, f64)>>> = exp.map(config.seed, config.trials, |_, h| {
            if h.degenerate {
                return None;
            }
            Some(
                parts
                    .iter()
                    .map(|p| {
                        let s = sector_functionals(&exp.body, &h, p).expect("non-degenerate hull");
                        (s.n[0] as f64, s.a[0])
                    })
                    .collect(),
            )
        });
        let kept: Vec<&Vec<(f64, f64)>> = values.iter().flatten().collect();
        if kept.len() < 2 {
            return Err(Error::Degenerate("too few non-degenerate trials".into()));
        }
        for (ai, arc) in arcs.iter().enumerate() {
            for (fname, pick) in [("N", 0usize), ("A", 1usize)] {
                let xs: Vec<f64> = kept.iter().map(|v| if pick == 0 { v[ai].0 } else { v[ai].1 }).collect();
                let mean_x = xs.iter().sum::<f64>() / xs.len() as f64;
                let mut prev: Option<f64> = None;
                for &k in &lambdas {
                    let lambda = k * th.eps_hat / arc.mu;
                    let ys: Vec<f64> = xs.iter().map(|&x| (lambda * x).exp()).collect();
                    let (m, lo, hi) = if lambda == 0.0 {
                        (1.0, 1.0, 1.0)
                    } else {
                        let s = MomentSummary::from_samples(&ys)?;
                        (s.mean, s.mean - Z95 * s.se_mean, s.mean + Z95 * s.se_mean)
                    };
                    if lambda == 0.0 {
                        zero_is_one &= m == 1.0;
                    }
                    if lambda > 0.0 {
                        if let Some(p) = prev {
                            increasing &= m >= p;
                        }
                        prev = Some(m);
                    } else if lambda == 0.0 {
                        prev = Some(m);
                    }
                    if !hi.is_finite() || hi >= th.cap {
                        below_cap = false;
                    }
                    worst = worst.max(hi);
                    t.push(vec![
                        Value::from(spec.to_string()),
                        num(arc.alpha),
                        num(arc.beta),
                        num(arc.mu),
                        Value::from(fname),
                        num(lambda),
                        num(lambda * arc.mu),
                        num(m),
                        num(lo),
                        num(hi),
                        num(mean_x),
                    ]);
                }
            }
        }
    }
    t.note("eps_hat", num(th.eps_hat));
    t.note("m0_proxy", num(th.m0_proxy));
    t.note("max_ci_hi", num(worst));
    t.flag(&format!("ci_hi_below_cap_{}", th.cap), below_cap);
    t.flag("lambda_zero_is_one", zero_is_one);
    t.flag("increasing_in_positive_lambda", increasing);
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_flags() {
        let mut cfg = ReportConfig::new(vec!["square:side=30".parse().unwrap()], 200, 4);
        cfg.sampler = "full".into();
        let t = mgf_report(&cfg).unwrap();
        assert_eq!(t.rows.len(), 3 * 2 * 5);
        assert!(t.flags["lambda_zero_is_one"]);
        assert!(t.flags["increasing_in_positive_lambda"]);
        let mu = t.column("mu").unwrap();
        assert!((mu[0] - 8.0).abs() < 1e-6 && (mu[29] - 32.0).abs() < 1e-6);
    }

    #[test]
    fn rejects_short_interval_and_large_lambda() {
        let mut cfg = ReportConfig::new(vec!["square:side=30".parse().unwrap()], 20, 4);
        cfg.intervals = vec![(0.0, 1e-4)];
        assert!(mgf_report(&cfg).is_err());
        cfg.intervals.clear();
        cfg.lambdas = vec![2.0];
        assert!(mgf_report(&cfg).is_err());
    }
}
