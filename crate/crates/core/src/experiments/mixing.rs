//! Decay of dependence between angular sectors.

use super::reports::{num, ReportConfig, ReportTable};
use super::stats::{correlation, linear_fit};
use super::thresholds::MixingThresholds;
use super::trials::{run_trials, TrialSet};
use crate::error::{Error, Result};
use crate::geometry::make_body;
use crate::measure::{dependence_bound, MeasureProfile};
use rayon::prelude::*;
use serde_json::Value;

pub fn mixing_report(config: &ReportConfig) -> Result<ReportTable> {
    let body = config.single_body("mixing")?;
    if config.partition < 8 {
        return Err(Error::param("L", format!("mixing needs at least 8 sectors, got {}", config.partition)));
    }
    let set = run_trials(&config.trial_config(body, config.partition))?;
    mixing_table(&set, &config.thresholds.mixing)
}

/// Correlations of sector 1 with every sector `j`, next to the mixing
/// integral between the sectors' starting angles.
pub fn mixing_table(set: &TrialSet, th: &MixingThresholds) -> Result<ReportTable> {
    let partition = set
        .partition
        .as_ref()
        .ok_or_else(|| Error::param("L", "trial set has no sector partition"))?;
    let body = make_body(&set.config.body)?;
    let profile = MeasureProfile::new(&body)?;
    let total = profile.total();
    let l = partition.len();
    let angles = partition.angles();
    let (n1, a1) = set.sector_column(0);
    let bounds: Vec<_> = (0..l).into_par_iter().map(|j| dependence_bound(&body, angles[0], angles[j])).collect();
    let mut t = ReportTable::new(
        "mixing",
        &[
            "j", "theta_j", "mu_distance", "corr_n", "corr_n_lo", "corr_n_hi", "corr_a", "corr_a_lo", "corr_a_hi",
            "log_bound", "bound", "bound_error",
        ],
    );
    let mut far_ok = true;
    let mut worst_far: f64 = 0.0;
    let mut dist = Vec::with_capacity(l);
    for j in 0..l {
        let (nj, aj) = set.sector_column(j);
        let cn = correlation(&n1, &nj)?;
        let ca = correlation(&a1, &aj)?;
        let d = profile.distance(angles[0], angles[j]);
        dist.push(d);
        if d >= th.far_fraction * total {
            worst_far = worst_far.max(cn.r.abs());
            far_ok &= cn.r.abs() < th.corr_max;
        }
        let b = &bounds[j];
        t.push(vec![
            Value::from(j + 1),
            num(angles[j]),
            num(d),
            num(cn.r),
            num(cn.ci.lo),
            num(cn.ci.hi),
            num(ca.r),
            num(ca.ci.lo),
            num(ca.ci.hi),
            num(b.log_value),
            num(b.value),
            num(b.error_estimate),
        ]);
    }
    t.note("total_mu", num(total));
    t.note("sectors", l);
    t.note("trials_used", n1.len());
    t.note("degenerate", set.degenerate_count());
    t.note("max_far_abs_corr_n", num(worst_far));
    t.flag(&format!("far_abs_corr_n_below_{}", th.corr_max), far_ok);

    // out to the antipode, in order of increasing distance
    let half = l / 2;
    let logs: Vec<f64> = bounds.iter().map(|b| b.log_value).collect();
    let decreasing = (1..=half).all(|j| logs[j] < logs[j - 1]);
    t.flag("bound_strictly_decreasing", decreasing);
    let (_, slope) = linear_fit(&dist[..=half], &logs[..=half]);
    t.note("delta_hat", num(-slope));
    t.flag("delta_hat_positive", -slope > 0.0);
    let asym = (1..l)
        .map(|j| (logs[j] - logs[l - j]).abs() / logs[j].abs().max(1.0))
        .fold(0.0f64, f64::max);
    t.note("bound_asymmetry", num(asym));
    t.flag("bound_symmetric", asym <= th.symmetry_tol);
    Ok(t)
}
