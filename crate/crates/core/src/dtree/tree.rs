use std::fmt::Write as _;

use num_traits::Float;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::InformationSystem;
use crate::rules::{Condition, Provenance, Rule};
use crate::scalar::Scalar;

use super::split::{at_most, best_split_with, SplitCandidate, SplitKind, SplitPolicy};

/// Rows below which children are grown on the current thread.
const PARALLEL_ROWS: usize = 4_096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, bound(deserialize = "F: Float + Deserialize<'de>"))]
pub struct TreeParams<F> {
    pub min_leaf: usize,
    pub max_depth: usize,
    /// Splits gaining less than this many bits become leaves. At zero or
    /// below, zero-gain splits are allowed so consistent data can be fitted
    /// exactly.
    pub min_gain: F,
}

impl<F: Float> Default for TreeParams<F> {
    fn default() -> Self {
        TreeParams { min_leaf: 2, max_depth: 30, min_gain: F::from(1e-4).unwrap() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum BranchTest<F> {
    Le { threshold: F },
    Gt { threshold: F },
    Eq { code: u32, label: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Branch<F> {
    pub test: BranchTest<F>,
    pub node: TreeNode<F>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "lowercase")]
pub enum TreeNode<F> {
    Split {
        split: SplitCandidate<F>,
        class_counts: Vec<u64>,
        branches: Vec<Branch<F>>,
    },
    Leaf {
        class: u32,
        label: String,
        class_counts: Vec<u64>,
    },
}

pub fn build_tree<F: Float + Scalar>(is: &InformationSystem, params: &TreeParams<F>) -> TreeNode<F> {
    let rows: Vec<usize> = (0..is.row_count()).collect();
    grow(is, rows, 0, params)
}

fn grow<F: Float + Scalar>(is: &InformationSystem, rows: Vec<usize>, depth: usize, params: &TreeParams<F>) -> TreeNode<F> {
    let mut counts = vec![0u64; is.class_count()];
    for &r in &rows {
        counts[is.decision_of(r) as usize] += 1;
    }
    let leaf = |counts: Vec<u64>| {
        let class = is.majority_class(&counts);
        TreeNode::Leaf { class, label: is.decision_label(class).to_string(), class_counts: counts }
    };
    let pure = counts.iter().filter(|&&c| c > 0).count() <= 1;
    if pure || rows.len() < 2 * params.min_leaf.max(1) || depth >= params.max_depth {
        return leaf(counts);
    }
    let policy = SplitPolicy { min_leaf: params.min_leaf, allow_zero_gain: params.min_gain <= F::zero() };
    let Some(split) = best_split_with::<F>(is, &rows, is.all_attributes(), policy) else {
        return leaf(counts);
    };
    if split.gain < params.min_gain {
        return leaf(counts);
    }

    let column = is.column(split.attribute);
    let groups: Vec<(BranchTest<F>, Vec<usize>)> = match split.kind {
        SplitKind::Threshold => {
            let t = split.threshold.expect("threshold split");
            let desc = is.attribute(split.attribute);
            let (le, gt): (Vec<usize>, Vec<usize>) = rows.iter().partition(|&&r| at_most(desc, column[r], t));
            vec![(BranchTest::Le { threshold: t }, le), (BranchTest::Gt { threshold: t }, gt)]
        }
        SplitKind::Categorical => {
            let dict = &is.attribute(split.attribute).dictionary;
            let mut by_code: Vec<Vec<usize>> = vec![Vec::new(); dict.len()];
            for &r in &rows {
                by_code[column[r] as usize].push(r);
            }
            by_code
                .into_iter()
                .enumerate()
                .filter(|(_, g)| !g.is_empty())
                .map(|(code, g)| (BranchTest::Eq { code: code as u32, label: dict[code].clone() }, g))
                .collect()
        }
    };
    let children: Vec<TreeNode<F>> = if rows.len() >= PARALLEL_ROWS {
        groups.par_iter().map(|(_, g)| grow(is, g.clone(), depth + 1, params)).collect()
    } else {
        groups.iter().map(|(_, g)| grow(is, g.clone(), depth + 1, params)).collect()
    };
    TreeNode::Split {
        split,
        class_counts: counts,
        branches: groups.into_iter().zip(children).map(|((test, _), node)| Branch { test, node }).collect(),
    }
}

impl<F: Float + Scalar> TreeNode<F> {
    pub fn class_counts(&self) -> &[u64] {
        match self {
            TreeNode::Split { class_counts, .. } | TreeNode::Leaf { class_counts, .. } => class_counts,
        }
    }

    pub fn records(&self) -> u64 {
        self.class_counts().iter().sum()
    }

    /// Follows the branches for `row`; a categorical value with no branch
    /// goes to the child that saw the most training records.
    pub fn classify(&self, is: &InformationSystem, row: usize) -> (u32, &[u64]) {
        match self {
            TreeNode::Leaf { class, class_counts, .. } => (*class, class_counts),
            TreeNode::Split { split, branches, .. } => {
                let v = is.value(split.attribute, row);
                let desc = is.attribute(split.attribute);
                let dictionary = &desc.dictionary;
                let next = branches
                    .iter()
                    .find(|b| match &b.test {
                        BranchTest::Le { threshold } => at_most(desc, v, *threshold),
                        BranchTest::Gt { threshold } => !at_most(desc, v, *threshold),
                        // labels, not codes, so records from another file with its own coding still route
                        BranchTest::Eq { label, .. } => {
                            usize::try_from(v).ok().and_then(|c| dictionary.get(c)) == Some(label)
                        }
                    })
                    .unwrap_or_else(|| {
                        branches
                            .iter()
                            .rev()
                            .max_by_key(|b| b.node.records())
                            .expect("split has branches")
                    });
                next.node.classify(is, row)
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 1,
            TreeNode::Split { branches, .. } => branches.iter().map(|b| b.node.leaf_count()).sum(),
        }
    }

    /// Total node count.
    pub fn size(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 1,
            TreeNode::Split { branches, .. } => 1 + branches.iter().map(|b| b.node.size()).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 0,
            TreeNode::Split { branches, .. } => 1 + branches.iter().map(|b| b.node.depth()).max().unwrap_or(0),
        }
    }

    /// One rule per leaf, in depth-first order.
    pub fn to_rules(&self) -> Vec<Rule<F>> {
        let mut out = Vec::with_capacity(self.leaf_count());
        self.collect_rules(&mut Vec::new(), &mut out);
        out
    }

    fn collect_rules(&self, path: &mut Vec<Condition<F>>, out: &mut Vec<Rule<F>>) {
        match self {
            TreeNode::Leaf { label, .. } => {
                out.push(Rule::new(path.clone(), label.clone(), Provenance::Tree).expect("tree paths are satisfiable"));
            }
            TreeNode::Split { split, branches, .. } => {
                for b in branches {
                    let name = split.attribute_name.clone();
                    path.push(match &b.test {
                        BranchTest::Le { threshold } => Condition::le(name, *threshold),
                        BranchTest::Gt { threshold } => Condition::gt(name, *threshold),
                        BranchTest::Eq { label, .. } => Condition::equals(name, label.clone()),
                    });
                    b.node.collect_rules(path, out);
                    path.pop();
                }
            }
        }
    }

    /// Indented text, one line per branch; leaves show `class (records/misclassified)`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        match self {
            TreeNode::Leaf { .. } => {
                let _ = writeln!(out, ": {}", leaf_text(self));
            }
            TreeNode::Split { .. } => self.render_into(0, &mut out),
        }
        out
    }

    fn render_into(&self, indent: usize, out: &mut String) {
        let TreeNode::Split { split, branches, .. } = self else { return };
        for b in branches {
            out.push_str(&"|   ".repeat(indent));
            let _ = match &b.test {
                BranchTest::Le { threshold } => write!(out, "{} <= {}", split.attribute_name, threshold),
                BranchTest::Gt { threshold } => write!(out, "{} > {}", split.attribute_name, threshold),
                BranchTest::Eq { label, .. } => write!(out, "{} = {}", split.attribute_name, label),
            };
            match &b.node {
                TreeNode::Leaf { .. } => {
                    let _ = writeln!(out, ": {}", leaf_text(&b.node));
                }
                node => {
                    out.push('\n');
                    node.render_into(indent + 1, out);
                }
            }
        }
    }
}

fn leaf_text<F>(node: &TreeNode<F>) -> String {
    match node {
        TreeNode::Leaf { label, class, class_counts } => {
            let total: u64 = class_counts.iter().sum();
            let wrong = total - class_counts[*class as usize];
            if wrong > 0 {
                format!("{label} ({total}/{wrong})")
            } else {
                format!("{label} ({total})")
            }
        }
        TreeNode::Split { .. } => String::new(),
    }
}
