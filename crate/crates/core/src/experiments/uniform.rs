//! Poisson versus fixed-size uniform sampling with `n = round(area)`.

use super::reports::{num, ReportConfig, ReportTable};
use super::stats::{ratio_interval, MomentSummary};
use super::thresholds::UniformThresholds;
use super::trials::{run_trials, ModelSpec, TrialSet};
use crate::error::{Error, Result};
use crate::geometry::make_body;
use crate::process::splitmix64;
use serde_json::Value;

pub const MIN_AREA: f64 = 1e3;

pub fn uniform_compare(config: &ReportConfig) -> Result<ReportTable> {
    let spec = config.single_body("uniform-compare")?;
    let area = make_body(spec)?.area();
    if area < MIN_AREA {
        return Err(Error::param("area", format!("uniform comparison needs area ≥ {MIN_AREA}, got {area}")));
    }
    let mut pc = config.trial_config(spec, 0);
    pc.model = ModelSpec::poisson();
    let mut uc = pc.clone();
    uc.model = ModelSpec::uniform(area.round() as u64);
    // independent streams, so the ratio intervals may treat the estimates as independent
    uc.seed = splitmix64(config.seed);
    let pois = run_trials(&pc)?;
    let unif = run_trials(&uc)?;
    uniform_table(&pois, &unif, &config.thresholds.uniform_compare)
}

pub fn uniform_table(pois: &TrialSet, unif: &TrialSet, th: &UniformThresholds) -> Result<ReportTable> {
    let n = unif.config.model.n.ok_or_else(|| Error::param("model", "second set must be uniform(n)"))?;
    let mut t = ReportTable::new(
        "uniform-compare",
        &["quantity", "poisson", "poisson_lo", "poisson_hi", "uniform", "uniform_lo", "uniform_hi", "ratio", "ratio_lo", "ratio_hi"],
    );
    let pn = MomentSummary::from_samples(&pois.column_n())?;
    let pa = MomentSummary::from_samples(&pois.column_a())?;
    let un = MomentSummary::from_samples(&unif.column_n())?;
    let ua = MomentSummary::from_samples(&unif.column_a())?;
    let mut ratio = std::collections::BTreeMap::new();
    for (q, p, u, var) in [("mean_n", pn, un, false), ("var_n", pn, un, true), ("mean_a", pa, ua, false), ("var_a", pa, ua, true)] {
        let (pv, pci, pse, uv, uci, use_) = if var {
            (p.variance, p.ci_variance, p.se_variance, u.variance, u.ci_variance, u.se_variance)
        } else {
            (p.mean, p.ci_mean, p.se_mean, u.mean, u.ci_mean, u.se_mean)
        };
        let (r, rci) = ratio_interval(uv, use_, pv, pse);
        ratio.insert(q, r);
        t.push(vec![
            Value::from(q),
            num(pv),
            num(pci.lo),
            num(pci.hi),
            num(uv),
            num(uci.lo),
            num(uci.hi),
            num(r),
            num(rci.lo),
            num(rci.hi),
        ]);
    }
    let area = pois.body_area;
    t.note("body", pois.config.body.to_string());
    t.note("area", num(area));
    t.note("n", n);
    t.note("n_over_area", num(n as f64 / area));
    t.flag(&format!("mean_n_ratio_within_{}", th.mean_tol), (ratio["mean_n"] - 1.0).abs() <= th.mean_tol);
    t.flag(&format!("var_n_ratio_within_{}", th.var_tol), (ratio["var_n"] - 1.0).abs() <= th.var_tol);
    Ok(t)
}
