use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use reductminer::{RankKey, ReductMode};

#[derive(Debug, Parser)]
#[command(name = "reductminer", version, about = "Rough-set reducts, gain-ratio trees and rule evaluation over delimited files")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Summarise attributes and the decision distribution.
    Describe(DescribeArgs),
    /// Discernibility scan, core, greedy reduct and reduct verification.
    Reduce(ReduceArgs),
    /// Gain-ratio table, decision tree and its rules.
    Tree(TreeArgs),
    /// Evaluate a rule file (or generated rules) against a dataset.
    Rules(RulesArgs),
    /// Build on one dataset and evaluate on another.
    Eval(EvalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Absolute,
    DecisionRelative,
}

impl From<ModeArg> for ReductMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Absolute => ReductMode::Absolute,
            ModeArg::DecisionRelative => ReductMode::DecisionRelative,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RankArg {
    Confidence,
    Support,
    Lift,
}

impl From<RankArg> for RankKey {
    fn from(r: RankArg) -> Self {
        match r {
            RankArg::Confidence => RankKey::Confidence,
            RankArg::Support => RankKey::Support,
            RankArg::Lift => RankKey::Lift,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Generate {
    Tree,
    Reduct,
}

/// Options shared by every command. Values left unset fall back to the
/// `--config` file, then to built-in defaults.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Delimited input file with a header row.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Field delimiter (single byte).
    #[arg(long)]
    pub delimiter: Option<char>,
    /// JSON schema overrides: {"decision": "y", "attributes": {"day": "categorical"}}.
    #[arg(long)]
    pub schema: Option<PathBuf>,
    /// JSON map of attribute name to ascending cut points.
    #[arg(long)]
    pub bins: Option<PathBuf>,
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Write the report into this directory instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Include wall-clock timings in the report (makes it run-dependent).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Clone, Args)]
pub struct DescribeArgs {
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct ReduceArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Comma-separated attribute set to verify as a reduct; repeatable.
    #[arg(long = "check", value_name = "A,B,..")]
    pub check: Vec<String>,
}

#[derive(Debug, Clone, Args)]
pub struct TreeParamsArgs {
    #[arg(long)]
    pub min_leaf: Option<usize>,
    #[arg(long)]
    pub min_gain: Option<f64>,
    #[arg(long)]
    pub max_depth: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct FilterArgs {
    /// Keep rules with confidence at least this fraction.
    #[arg(long)]
    pub min_confidence: Option<f64>,
    /// Keep rules matching at least this many records.
    #[arg(long)]
    pub min_support: Option<u64>,
    #[arg(long, value_enum)]
    pub rank: Option<RankArg>,
}

#[derive(Debug, Clone, Args)]
pub struct TreeArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub params: TreeParamsArgs,
    #[command(flatten)]
    pub filter: FilterArgs,
}

#[derive(Debug, Clone, Args)]
pub struct RulesArgs {
    #[command(flatten)]
    pub common: Common,
    /// JSON rule list.
    #[arg(long, conflicts_with = "generate")]
    pub rules: Option<PathBuf>,
    /// Derive rules from the data instead of reading a file.
    #[arg(long, value_enum)]
    pub generate: Option<Generate>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[command(flatten)]
    pub params: TreeParamsArgs,
    #[command(flatten)]
    pub filter: FilterArgs,
    /// Compare computed confidences with each rule's expected_accuracy.
    #[arg(long)]
    pub compare: bool,
    /// Percentage points within which a figure counts as reproduced.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub common: Common,
    /// Dataset the rules or tree are evaluated on.
    #[arg(long)]
    pub test: Option<PathBuf>,
    /// JSON rule list; without it a tree is built on --input.
    #[arg(long)]
    pub rules: Option<PathBuf>,
    #[command(flatten)]
    pub params: TreeParamsArgs,
    #[arg(long)]
    pub compare: bool,
    #[arg(long)]
    pub tolerance: Option<f64>,
}
