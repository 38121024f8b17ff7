//! Gain-ratio decision trees with binary threshold splits on numeric
//! attributes and multi-way splits on categorical ones.

mod measures;
mod split;
mod tree;

pub use measures::{conditional_entropy, conditional_entropy_of, entropy, split_info};
pub use split::{best_split, best_split_with, gain_ratio_table, GainRatioEntry, SplitCandidate, SplitKind, SplitPolicy, GAIN_EPSILON};
pub use tree::{build_tree, Branch, BranchTest, TreeNode, TreeParams};
