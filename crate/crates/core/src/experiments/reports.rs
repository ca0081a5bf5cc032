//! Report tables and the report registry.

use super::thresholds::Thresholds;
use super::trials::{run_trials, ModelSpec, TrialConfig, TrialSet};
use crate::error::{Error, Result};
use crate::geometry::BodySpec;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;

/// A rectangular result table with a summary record and named pass/fail
/// flags. Cells are JSON values so that text and numbers can share a row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportTable {
    pub report: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    pub summary: BTreeMap<String, Value>,
    pub flags: BTreeMap<String, bool>,
}

impl ReportTable {
    pub fn new(report: &str, columns: &[&str]) -> Self {
        ReportTable {
            report: report.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: BTreeMap::new(),
            flags: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note<V: Into<Value>>(&mut self, key: &str, v: V) {
        self.summary.insert(key.to_string(), v.into());
    }

    pub fn flag(&mut self, key: &str, ok: bool) {
        self.flags.insert(key.to_string(), ok);
    }

    /// True when every flag passes (vacuously true without flags).
    pub fn passed(&self) -> bool {
        self.flags.values().all(|&f| f)
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// A numeric column; non-numeric cells become NaN.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i].as_f64().unwrap_or(f64::NAN)).collect())
    }

    pub fn summary_f64(&self, key: &str) -> Option<f64> {
        self.summary.get(key).and_then(Value::as_f64)
    }

    /// Append another table's rows, summary and flags (columns must agree).
    pub fn merge(&mut self, other: ReportTable) -> Result<()> {
        if other.columns != self.columns {
            return Err(Error::param("report", "cannot merge tables with different columns"));
        }
        self.rows.extend(other.rows);
        self.summary.extend(other.summary);
        self.flags.extend(other.flags);
        Ok(())
    }
}

/// JSON number, or null for non-finite values (JSON has no NaN).
pub(crate) fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// Inputs shared by all reports; each report reads what it needs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub bodies: Vec<BodySpec>,
    pub model: ModelSpec,
    pub trials: u64,
    pub seed: u64,
    /// Sector count for the mixing report.
    pub partition: usize,
    /// Direction for the vertex-marginal check.
    pub theta: f64,
    pub bins: usize,
    /// Explicit intervals for the MGF report; empty means measure-based
    /// intervals of `m0, 2 m0, 4 m0` starting at angle 0.
    pub intervals: Vec<(f64, f64)>,
    /// λ grid for the MGF report, as multiples of `eps_hat / μ`.
    pub lambdas: Vec<f64>,
    pub sampler: String,
    pub thresholds: Thresholds,
}

impl ReportConfig {
    pub fn new(bodies: Vec<BodySpec>, trials: u64, seed: u64) -> Self {
        ReportConfig {
            bodies,
            model: ModelSpec::poisson(),
            trials,
            seed,
            partition: 16,
            theta: 0.0,
            bins: 50,
            intervals: Vec::new(),
            lambdas: vec![-1.0, -0.5, 0.0, 0.5, 1.0],
            sampler: "annulus".into(),
            thresholds: Thresholds::default(),
        }
    }

    pub(crate) fn single_body(&self, report: &str) -> Result<&BodySpec> {
        match self.bodies.as_slice() {
            [b] => Ok(b),
            _ => Err(Error::param("body", format!("{report} takes exactly one body, got {}", self.bodies.len()))),
        }
    }

    pub(crate) fn trial_config(&self, body: &BodySpec, partition: usize) -> TrialConfig {
        TrialConfig::new(body.clone(), self.model.clone(), self.trials, self.seed)
            .with_partition(partition)
            .with_sampler(&self.sampler)
    }

    /// One trial set per body, sorted by area.
    pub(crate) fn run_all(&self, partition: usize) -> Result<Vec<TrialSet>> {
        if self.bodies.is_empty() {
            return Err(Error::param("body", "at least one body is required"));
        }
        let mut sets = self
            .bodies
            .iter()
            .map(|b| run_trials(&self.trial_config(b, partition)))
            .collect::<Result<Vec<_>>>()?;
        sets.sort_by(|a, b| a.body_area.total_cmp(&b.body_area));
        Ok(sets)
    }
}

pub trait Report: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn run(&self, config: &ReportConfig) -> Result<ReportTable>;
}

macro_rules! report {
    ($ty:ident, $name:literal, $doc:literal, $f:path) => {
        pub struct $ty;

        impl Report for $ty {
            fn name(&self) -> &'static str {
                $name
            }

            fn describe(&self) -> &'static str {
                $doc
            }

            fn run(&self, config: &ReportConfig) -> Result<ReportTable> {
                $f(config)
            }
        }
    };
}

report!(CltReport, "clt", "KS distance of N and A to the normal law across scales", super::clt::clt_report);
report!(ScalingReport, "scaling", "moments of N and A, their ratios and growth across scales", super::clt::scaling_report);
report!(MixingReport, "mixing", "sector correlations against μ-distance and the mixing integral", super::mixing::mixing_report);
report!(MgfReport, "mgf", "empirical moment generating function of sector functionals", super::mgf::mgf_report);
report!(UniformCompareReport, "uniform-compare", "moments under Poisson and uniform(n = area) sampling", super::uniform::uniform_compare);
report!(WcheckReport, "wcheck", "law of the support vertex W(θ) against exp(−A) dp", super::wcheck::w_marginal_report);

pub struct ReportRegistry {
    entries: Vec<Box<dyn Report>>,
}

impl Default for ReportRegistry {
    fn default() -> Self {
        let mut r = ReportRegistry::empty();
        r.register(Box::new(CltReport));
        r.register(Box::new(ScalingReport));
        r.register(Box::new(MixingReport));
        r.register(Box::new(MgfReport));
        r.register(Box::new(UniformCompareReport));
        r.register(Box::new(WcheckReport));
        r
    }
}

impl ReportRegistry {
    pub fn empty() -> Self {
        ReportRegistry { entries: Vec::new() }
    }

    /// Later registrations replace earlier ones with the same name.
    pub fn register(&mut self, report: Box<dyn Report>) {
        self.entries.retain(|r| r.name() != report.name());
        self.entries.push(report);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|r| r.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn Report> {
        self.entries
            .iter()
            .find(|r| r.name() == name)
            .map(|r| r.as_ref())
            .ok_or_else(|| Error::Unknown { registry: "report", name: name.to_string() })
    }
}

pub fn run_report(name: &str, config: &ReportConfig) -> Result<ReportTable> {
    ReportRegistry::default().get(name)?.run(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names() {
        let r = ReportRegistry::default();
        assert_eq!(r.names(), ["clt", "scaling", "mixing", "mgf", "uniform-compare", "wcheck"]);
        assert!(matches!(r.get("nope"), Err(Error::Unknown { .. })));
    }

    #[test]
    fn table_flags_and_columns() {
        let mut t = ReportTable::new("x", &["a", "b"]);
        t.push(vec![num(1.0), Value::from("s")]);
        t.push(vec![num(f64::NAN), num(2.0)]);
        assert_eq!(t.column("b").unwrap()[1], 2.0);
        assert!(t.column("a").unwrap()[1].is_nan());
        assert!(t.passed());
        t.flag("f", false);
        assert!(!t.passed());
    }
}
