//! Rough-set attribute reduction and gain-ratio decision-tree induction over
//! tabular data.
//!
//! The crate loads delimiter-separated files into an integer-encoded
//! [`InformationSystem`], computes indiscernibility partitions, approximations,
//! discernibility summaries and reducts, grows C4.5-style decision trees, and
//! evaluates decision rules exactly (integer counts, rational confidences).
//!
//! Numeric code is generic over the scalar type. Information measures work
//! with any [`num_traits::Float`]; rule thresholds and cut points work with any
//! [`Scalar`], which also covers exact rationals. The aliases below fix the
//! scalar to `f64` for everyday use.

pub mod attrset;
pub mod dataset;
pub mod dtree;
pub mod error;
pub mod roughset;
pub mod rules;
pub mod scalar;

pub use attrset::AttributeSet;
pub use dataset::{AttributeDescriptor, AttributeKind, InformationSystem, Schema, Value};
pub use error::{Error, Result};
pub use roughset::{Partition, ReductMode, ReductVerdict};
pub use rules::{Agreement, Comparison, Percent, RankKey, RuleMetrics};
pub use scalar::Scalar;

/// Cut points for one attribute, `f64` thresholds.
pub type BinningSpec = dataset::BinningSpec<f64>;
/// Cut points held as exact rationals.
pub type ExactBinningSpec = dataset::BinningSpec<num_rational::Ratio<i64>>;

pub type Condition = rules::Condition<f64>;
pub type Rule = rules::Rule<f64>;
pub type BoundRule = rules::BoundRule<f64>;
pub type EvaluatedRule = rules::EvaluatedRule<f64>;
/// Rule whose interval bounds are exact rationals.
pub type ExactRule = rules::Rule<num_rational::Ratio<i64>>;

pub type SplitCandidate = dtree::SplitCandidate<f64>;
pub type TreeNode = dtree::TreeNode<f64>;
pub type TreeParams = dtree::TreeParams<f64>;
pub type Approximation = roughset::Approximation;
pub type DiscernibilitySummary = roughset::DiscernibilitySummary;
