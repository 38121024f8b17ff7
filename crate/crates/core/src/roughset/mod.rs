//! Indiscernibility, approximations, discernibility and reducts.

mod approx;
mod discern;
mod partition;
mod reduct;
mod rulegen;

use serde::{Deserialize, Serialize};

pub use approx::{approximate, positive_region, Approximation};
pub use discern::{
    discernibility_scan, discernibility_scan_with, materialize_matrix, DiscernibilityMatrix,
    DiscernibilitySummary, ScanOptions, SummaryReport, DEFAULT_MATRIX_CAP,
};
pub use partition::{partition_by, Partition};
pub use reduct::{greedy_reduct, greedy_reduct_from_core, is_reduct, is_reduct_in, ReductVerdict};
pub use rulegen::rules_from_partition;

/// Which object pairs the discernibility relation considers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductMode {
    /// Every pair of objects.
    #[default]
    Absolute,
    /// Only pairs whose decision values differ; reducts preserve the positive region.
    DecisionRelative,
}

impl std::str::FromStr for ReductMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "absolute" => Ok(ReductMode::Absolute),
            "decision-relative" | "decision_relative" | "relative" => Ok(ReductMode::DecisionRelative),
            other => Err(format!("unknown reduct mode `{other}`")),
        }
    }
}

impl std::fmt::Display for ReductMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ReductMode::Absolute => "absolute",
            ReductMode::DecisionRelative => "decision-relative",
        })
    }
}
