//! Pass/fail thresholds for the report flags.
//!
//! The defaults are read from `thresholds.json` at the crate root; a run can
//! supply its own file. Nothing in the report code hard-codes a threshold.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

const DEFAULTS: &str = include_str!("../../thresholds.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KsLimits {
    pub ks_max_n: Option<f64>,
    pub ks_max_a: Option<f64>,
    /// Require KS to be nonincreasing along the scale list.
    pub monotone: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CltThresholds {
    pub default: KsLimits,
    #[serde(default)]
    pub by_kind: BTreeMap<String, KsLimits>,
}

impl CltThresholds {
    pub fn limits(&self, kind: &str) -> &KsLimits {
        self.by_kind.get(kind).unwrap_or(&self.default)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingThresholds {
    /// Largest allowed max/min of each pairwise ratio over all rows.
    pub ratio_band: f64,
    /// Largest allowed CI half-width relative to the estimate.
    pub ci_rel_half_width: f64,
    /// Allowed log–log slope of `E[N]` against area, per body kind.
    #[serde(default)]
    pub slope: BTreeMap<String, [f64; 2]>,
    /// Largest allowed max/min of `E[N]/log(area)`, per body kind.
    #[serde(default)]
    pub log_ratio_max: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixingThresholds {
    pub corr_max: f64,
    /// Sectors at μ-distance at least this fraction of the total are "far".
    pub far_fraction: f64,
    /// Allowed `|log b_j − log b_{L−j}|` relative to `max(1, |log b_j|)`.
    pub symmetry_tol: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MgfThresholds {
    /// Smallest interval measure used.
    pub m0_proxy: f64,
    /// `|λ| μ ≤ eps_hat`.
    pub eps_hat: f64,
    pub cap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniformThresholds {
    pub mean_tol: f64,
    pub var_tol: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WcheckThresholds {
    pub ks_max: f64,
    pub mass_tol: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub clt: CltThresholds,
    pub scaling: ScalingThresholds,
    pub mixing: MixingThresholds,
    pub mgf: MgfThresholds,
    pub uniform_compare: UniformThresholds,
    pub wcheck: WcheckThresholds,
}

impl Thresholds {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::param("thresholds", e.to_string()))
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::param("thresholds", format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

impl Default for Thresholds {
    fn default() -> Self {
        Self::from_json(DEFAULTS).expect("bundled thresholds parse")
    }
}
