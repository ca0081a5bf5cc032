//! Monte-Carlo harness and statistical reports.

pub mod clt;
pub mod mgf;
pub mod mixing;
pub mod reports;
pub mod stats;
pub mod thresholds;
pub mod trials;
pub mod uniform;
pub mod wcheck;

pub use stats::{correlation, ks_statistic, normal_cdf, Correlation, Interval, KsResult, MomentSummary};
pub use trials::{run_trials, Experiment, ModelSpec, TrialConfig, TrialRow, TrialSet};
pub use clt::{clt_report, clt_table, lattice_floor, scaling_report, scaling_table};
pub use mgf::mgf_report;
pub use mixing::{mixing_report, mixing_table};
pub use reports::{run_report, Report, ReportConfig, ReportRegistry, ReportTable};
pub use thresholds::Thresholds;
pub use uniform::{uniform_compare, uniform_table};
pub use wcheck::{w_marginal_report, w_marginal_table, OffsetDensity};
