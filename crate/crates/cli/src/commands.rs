//! Subcommand dispatch.

use crate::config::{body_specs, intervals, Command, RunConfig};
use crate::output::emit;
use crate::CliError;
use rpl_core::experiments::{run_report, run_trials, MomentSummary, ReportConfig, ReportTable, TrialConfig};
use rpl_core::geometry::make_body;
use rpl_core::measure::{wet_area_with_grid, MeasureProfile};
use serde_json::Value;
use std::f64::consts::TAU;

fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// Density samples, or unit-cap wet areas next to `1 + μ/8` when intervals
/// are given.
pub fn measure(cfg: &RunConfig) -> Result<ReportTable, CliError> {
    let spec = &body_specs(cfg)?[0];
    let body = make_body(spec)?;
    let profile = MeasureProfile::new(&body)?;
    let ivs = intervals(cfg)?;
    let mut t;
    if ivs.is_empty() {
        t = ReportTable::new("measure", &["theta", "f_density"]);
        for i in 0..cfg.points {
            let theta = TAU * i as f64 / cfg.points as f64;
            t.push(vec![num(theta), num(profile.density(theta))]);
        }
    } else {
        t = ReportTable::new("measure", &["alpha", "beta", "mu", "wet_area", "identity_residual"]);
        for (a, b) in ivs {
            let mu = profile.interval(a, b);
            let wet = wet_area_with_grid(&body, 1.0, a, b, cfg.grid)?;
            t.push(vec![num(a), num(b), num(mu), num(wet), num(wet - 1.0 - mu / 8.0)]);
        }
    }
    t.note("body", spec.to_string());
    t.note("area", num(body.area()));
    t.note("total_mu", num(profile.total()));
    Ok(t)
}

/// One row per trial: counts, `N`, `A` and sector vectors.
pub fn simulate(cfg: &RunConfig) -> Result<ReportTable, CliError> {
    let spec = body_specs(cfg)?.remove(0);
    let tc = TrialConfig::new(spec, cfg.model.parse()?, cfg.trials, cfg.seed)
        .with_partition(cfg.partition)
        .with_sampler(&cfg.sampler);
    let set = run_trials(&tc)?;
    let l = cfg.partition;
    let mut cols: Vec<String> = ["trial", "count", "N", "A"].iter().map(|s| s.to_string()).collect();
    cols.extend((1..=l).map(|i| format!("N_{i}")));
    cols.extend((1..=l).map(|i| format!("A_{i}")));
    let col_refs: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut t = ReportTable::new("simulate", &col_refs);
    for r in &set.rows {
        let mut row = vec![Value::from(r.trial), Value::from(r.count), Value::from(r.n), num(r.a)];
        if r.sector_n.is_empty() {
            row.extend(std::iter::repeat(Value::Null).take(2 * l));
        } else {
            row.extend(r.sector_n.iter().map(|&v| Value::from(v)));
            row.extend(r.sector_a.iter().map(|&v| num(v)));
        }
        t.push(row);
    }
    t.note("body_area", num(set.body_area));
    t.note("degenerate", set.degenerate_count());
    if set.rows.len() >= 2 {
        let n = MomentSummary::from_samples(&set.column_n())?;
        let a = MomentSummary::from_samples(&set.column_a())?;
        t.note("mean_n", num(n.mean));
        t.note("var_n", num(n.variance));
        t.note("mean_a", num(a.mean));
        t.note("var_a", num(a.variance));
    }
    Ok(t)
}

pub fn report_config(cfg: &RunConfig) -> Result<ReportConfig, CliError> {
    let mut rc = ReportConfig::new(body_specs(cfg)?, cfg.trials, cfg.seed);
    rc.model = cfg.model.parse()?;
    rc.partition = cfg.partition;
    rc.theta = cfg.theta;
    rc.bins = cfg.bins;
    rc.intervals = intervals(cfg)?;
    rc.lambdas = cfg.lambdas.clone();
    rc.sampler = cfg.sampler.clone();
    rc.thresholds = cfg.thresholds.clone();
    Ok(rc)
}

pub fn build_table(cfg: &RunConfig) -> Result<ReportTable, CliError> {
    match cfg.command {
        Command::Measure => measure(cfg),
        Command::Simulate => simulate(cfg),
        other => Ok(run_report(other.name(), &report_config(cfg)?)?),
    }
}

/// Run on a pool of `cfg.threads` workers, write outputs, and return the
/// exit code (0 all flags pass, 1 some flag fails).
pub fn dispatch(cfg: &RunConfig) -> Result<i32, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| CliError::Io(format!("thread pool: {e}")))?;
    let table = pool.install(|| build_table(cfg))?;
    emit(cfg, &table)?;
    Ok(if table.passed() { 0 } else { 1 })
}
