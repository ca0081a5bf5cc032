//! Monte-Carlo trials: one random polygon per trial index.

use crate::error::{Error, Result};
use crate::geometry::{make_body, BodySpec, ConvexBody};
use crate::measure::{AngularPartition, MeasureProfile};
use crate::process::{make_model, make_sampler, sector_functionals, HullResult, HullSampler, PointModel, SeedRecord};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// `poisson` or `uniform` with a point count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
}

impl ModelSpec {
    pub fn poisson() -> Self {
        ModelSpec { name: "poisson".into(), n: None }
    }

    pub fn uniform(n: u64) -> Self {
        ModelSpec { name: "uniform".into(), n: Some(n) }
    }

    pub fn build(&self) -> Result<Box<dyn PointModel>> {
        make_model(&self.name, self.n)
    }
}

impl std::fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.n {
            Some(n) => write!(f, "{}:n={n}", self.name),
            None => write!(f, "{}", self.name),
        }
    }
}

impl std::str::FromStr for ModelSpec {
    type Err = Error;

    /// `poisson`, `uniform:n=10000` or `uniform(10000)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, rest) = if let Some((a, b)) = s.split_once(':') {
            (a, Some(b.trim().trim_start_matches("n=")))
        } else if let Some(open) = s.find('(') {
            (&s[..open], Some(s[open + 1..].trim_end_matches(')').trim_start_matches("n=")))
        } else {
            (s, None)
        };
        let n = rest
            .map(|r| r.trim().parse::<f64>().map_err(|_| Error::param("n", format!("not a number: `{r}`"))))
            .transpose()?
            .map(|v| {
                if v >= 0.0 && v.fract() == 0.0 {
                    Ok(v as u64)
                } else {
                    Err(Error::param("n", format!("must be a non-negative integer, got {v}")))
                }
            })
            .transpose()?;
        let spec = ModelSpec { name: name.trim().to_string(), n };
        spec.build()?;
        Ok(spec)
    }
}

/// Everything that determines a trial set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub body: BodySpec,
    pub model: ModelSpec,
    pub trials: u64,
    pub seed: u64,
    /// Number of equal-μ sectors (0: no sector functionals).
    pub partition: usize,
    /// Hull sampling strategy (`annulus` or `full`).
    pub sampler: String,
}

impl TrialConfig {
    pub fn new(body: BodySpec, model: ModelSpec, trials: u64, seed: u64) -> Self {
        TrialConfig { body, model, trials, seed, partition: 0, sampler: "annulus".into() }
    }

    pub fn with_partition(mut self, l: usize) -> Self {
        self.partition = l;
        self
    }

    pub fn with_sampler(mut self, s: &str) -> Self {
        self.sampler = s.to_string();
        self
    }
}

/// One trial's values; sector vectors are empty without a partition or for
/// degenerate hulls.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub trial: u64,
    pub count: u64,
    pub n: usize,
    pub a: f64,
    pub degenerate: bool,
    pub sector_n: Vec<usize>,
    pub sector_a: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialSet {
    pub config: TrialConfig,
    pub body_area: f64,
    pub partition: Option<AngularPartition>,
    pub rows: Vec<TrialRow>,
}

impl TrialSet {
    pub fn degenerate_count(&self) -> usize {
        self.rows.iter().filter(|r| r.degenerate).count()
    }

    pub fn column_n(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.n as f64).collect()
    }

    pub fn column_a(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.a).collect()
    }

    pub fn counts(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.count as f64).collect()
    }

    /// `(N_i, A_i)` of sector `i` over non-degenerate trials.
    pub fn sector_column(&self, i: usize) -> (Vec<f64>, Vec<f64>) {
        self.rows
            .iter()
            .filter(|r| !r.degenerate && !r.sector_n.is_empty())
            .map(|r| (r.sector_n[i] as f64, r.sector_a[i]))
            .unzip()
    }
}

/// Prepared body, sampler and model for repeated trial runs.
pub struct Experiment {
    pub body: ConvexBody,
    pub sampler: Box<dyn HullSampler>,
    pub model: Box<dyn PointModel>,
}

impl Experiment {
    pub fn new(config: &TrialConfig) -> Result<Self> {
        let body = make_body(&config.body)?;
        let sampler = make_sampler(&config.sampler, &body)?;
        let model = config.model.build()?;
        Ok(Experiment { body, sampler, model })
    }

    pub fn hull(&self, seed: u64, trial: u64) -> HullResult {
        self.sampler.sample(self.model.as_ref(), SeedRecord::new(seed, trial))
    }

    /// Apply `f` to the hull of every trial, in parallel on the current rayon
    /// pool; results come back in trial order.
    pub fn map<T, F>(&self, seed: u64, trials: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64, HullResult) -> T + Sync,
    {
        (0..trials).into_par_iter().map(|t| f(t, self.hull(seed, t))).collect()
    }
}

/// Run `config.trials` independent trials.
pub fn run_trials(config: &TrialConfig) -> Result<TrialSet> {
    if config.trials == 0 {
        return Err(Error::param("trials", "must be at least 1"));
    }
    let exp = Experiment::new(config)?;
    let partition = if config.partition > 0 {
        Some(MeasureProfile::new(&exp.body)?.equal_partition(config.partition, 0.0)?)
    } else {
        None
    };
    let rows = exp.map(config.seed, config.trials, |trial, h| {
        let (sector_n, sector_a) = match (&partition, h.degenerate) {
            (Some(p), false) => {
                let s = sector_functionals(&exp.body, &h, p).expect("non-degenerate hull");
                (s.n, s.a)
            }
            _ => (Vec::new(), Vec::new()),
        };
        TrialRow { trial, count: h.point_count, n: h.n, a: h.a, degenerate: h.degenerate, sector_n, sector_a }
    });
    Ok(TrialSet { config: config.clone(), body_area: exp.body.area(), partition, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_counts() {
        let cfg = TrialConfig::new("square:side=30".parse().unwrap(), ModelSpec::poisson(), 300, 5).with_partition(4);
        let a = run_trials(&cfg).unwrap();
        let b = run_trials(&cfg).unwrap();
        assert_eq!(a, b);
        let mean = a.counts().iter().sum::<f64>() / 300.0;
        assert!((mean - 900.0).abs() < 4.0 * (900.0f64 / 300.0).sqrt());
        for r in &a.rows {
            assert_eq!(r.sector_n.iter().sum::<usize>(), r.n);
        }
    }

    #[test]
    fn uniform_rows_have_n_points() {
        let cfg = TrialConfig::new("disk:area=500,k=256".parse().unwrap(), ModelSpec::uniform(500), 50, 1);
        assert!(run_trials(&cfg).unwrap().rows.iter().all(|r| r.count == 500));
    }

    #[test]
    fn zero_trials_rejected() {
        let cfg = TrialConfig::new("square:side=30".parse().unwrap(), ModelSpec::poisson(), 0, 5);
        assert!(run_trials(&cfg).is_err());
    }

    #[test]
    fn model_spec_parsing() {
        assert_eq!("uniform:n=100".parse::<ModelSpec>().unwrap(), ModelSpec::uniform(100));
        assert_eq!("uniform(100)".parse::<ModelSpec>().unwrap(), ModelSpec::uniform(100));
        assert_eq!("poisson".parse::<ModelSpec>().unwrap(), ModelSpec::poisson());
        assert!("uniform".parse::<ModelSpec>().is_err());
        assert!("uniform:n=1.5".parse::<ModelSpec>().is_err());
    }
}
