use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::attrset::AttributeSet;
use crate::dataset::{AttributeDescriptor, InformationSystem};
use crate::scalar::Scalar;

use super::measures::{entropy, split_info};

/// Gains at or below this are treated as zero.
pub const GAIN_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitKind {
    /// Two branches, `<= threshold` and `> threshold`.
    Threshold,
    /// One branch per value present at the node.
    Categorical,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitCandidate<F> {
    pub attribute: usize,
    pub attribute_name: String,
    pub kind: SplitKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<F>,
    pub gain: F,
    pub split_info: F,
    pub gain_ratio: F,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitPolicy {
    /// Smallest branch a threshold split may produce; categorical splits need
    /// at least two branches this large.
    pub min_leaf: usize,
    /// Fall back to zero-gain splits when nothing has positive gain.
    pub allow_zero_gain: bool,
}

impl Default for SplitPolicy {
    fn default() -> Self {
        SplitPolicy { min_leaf: 2, allow_zero_gain: false }
    }
}

/// Whether a cell falls on the `<=` side of a threshold. Binned columns hold
/// bin codes, but their thresholds are cut points.
pub(crate) fn at_most<F: Float + Scalar>(desc: &AttributeDescriptor, cell: i64, threshold: F) -> bool {
    match &desc.cut_points {
        Some(cuts) => usize::try_from(cell).is_ok_and(|c| c <= cuts.partition_point(|&x| F::from(x).is_some_and(|x| x < threshold))),
        None => F::from_cell(cell) <= threshold,
    }
}

fn class_counts(is: &InformationSystem, rows: &[usize]) -> Vec<u64> {
    let mut counts = vec![0u64; is.class_count()];
    for &r in rows {
        counts[is.decision_of(r) as usize] += 1;
    }
    counts
}

fn weighted_entropy<F: Float>(parts: &[&[u64]], total: u64) -> F {
    let n = F::from(total).unwrap();
    parts
        .iter()
        .map(|c| {
            let size: u64 = c.iter().sum();
            if size == 0 {
                F::zero()
            } else {
                F::from(size).unwrap() / n * entropy::<F>(c).expect("non-empty part")
            }
        })
        .fold(F::zero(), |a, b| a + b)
}

fn ratio<F: Float>(gain: F, info: F) -> F {
    if info > F::zero() {
        gain / info
    } else {
        F::zero()
    }
}

/// Best split on one attribute, or `None` when no split has two usable branches.
fn evaluate_attribute<F: Float + Scalar>(
    is: &InformationSystem,
    rows: &[usize],
    a: usize,
    parent_entropy: F,
    policy: SplitPolicy,
) -> Option<SplitCandidate<F>> {
    let desc = is.attribute(a);
    let column = is.column(a);
    let k = is.class_count();
    let n = rows.len() as u64;
    let min_leaf = policy.min_leaf.max(1) as u64;
    if desc.kind.is_coded() {
        let mut blocks = vec![vec![0u64; k]; desc.dictionary.len()];
        for &r in rows {
            blocks[column[r] as usize][is.decision_of(r) as usize] += 1;
        }
        blocks.retain(|b| b.iter().sum::<u64>() > 0);
        let sizes: Vec<u64> = blocks.iter().map(|b| b.iter().sum()).collect();
        if sizes.iter().filter(|&&s| s >= min_leaf).count() < 2 {
            return None;
        }
        let parts: Vec<&[u64]> = blocks.iter().map(Vec::as_slice).collect();
        let gain = parent_entropy - weighted_entropy::<F>(&parts, n);
        let info = split_info::<F>(&sizes, n).expect("sizes sum to n");
        return Some(SplitCandidate {
            attribute: a,
            attribute_name: desc.name.clone(),
            kind: SplitKind::Categorical,
            threshold: None,
            gain,
            split_info: info,
            gain_ratio: ratio(gain, info),
        });
    }

    let mut sorted: Vec<(i64, u32)> = rows.iter().map(|&r| (column[r], is.decision_of(r))).collect();
    sorted.sort_unstable();
    let total = class_counts(is, rows);
    let mut left = vec![0u64; k];
    let mut best: Option<(F, usize)> = None;
    for i in 0..sorted.len() - 1 {
        left[sorted[i].1 as usize] += 1;
        if sorted[i].0 == sorted[i + 1].0 {
            continue;
        }
        let n_left = i as u64 + 1;
        if n_left < min_leaf || n - n_left < min_leaf {
            continue;
        }
        let right: Vec<u64> = total.iter().zip(&left).map(|(t, l)| t - l).collect();
        let gain = parent_entropy - weighted_entropy::<F>(&[&left, &right], n);
        if best.is_none_or(|(g, _)| gain > g) {
            best = Some((gain, i));
        }
    }
    let (gain, i) = best?;
    let n_left = i as u64 + 1;
    let info = split_info::<F>(&[n_left, n - n_left], n).expect("sizes sum to n");
    Some(SplitCandidate {
        attribute: a,
        attribute_name: desc.name.clone(),
        kind: SplitKind::Threshold,
        threshold: Some(match &desc.cut_points {
            Some(cuts) => F::from(cuts[sorted[i].0 as usize]).expect("cut point fits the scalar"),
            None => F::between(sorted[i].0, sorted[i + 1].0),
        }),
        gain,
        split_info: info,
        gain_ratio: ratio(gain, info),
    })
}

/// [`best_split_with`] under the default policy.
pub fn best_split<F: Float + Scalar>(is: &InformationSystem, rows: &[usize], candidates: AttributeSet) -> Option<SplitCandidate<F>> {
    best_split_with(is, rows, candidates, SplitPolicy::default())
}

/// Highest gain ratio among candidates whose gain is at least the mean of
/// all positive gains. Numeric attributes contribute their best-gain
/// midpoint threshold. Splits with zero split information are dropped.
pub fn best_split_with<F: Float + Scalar>(
    is: &InformationSystem,
    rows: &[usize],
    candidates: AttributeSet,
    policy: SplitPolicy,
) -> Option<SplitCandidate<F>> {
    if rows.is_empty() {
        return None;
    }
    let counts = class_counts(is, rows);
    if counts.iter().filter(|&&c| c > 0).count() < 2 {
        return None;
    }
    let h = entropy::<F>(&counts).expect("rows non-empty");
    let all: Vec<SplitCandidate<F>> = candidates
        .iter()
        .filter_map(|a| evaluate_attribute(is, rows, a, h, policy))
        .filter(|c| c.split_info > F::zero())
        .collect();
    let eps = F::from(GAIN_EPSILON).unwrap();
    let positive: Vec<&SplitCandidate<F>> = all.iter().filter(|c| c.gain > eps).collect();
    let pool: Vec<&SplitCandidate<F>> = if positive.is_empty() {
        if !policy.allow_zero_gain {
            return None;
        }
        all.iter().collect()
    } else {
        let mean = positive.iter().fold(F::zero(), |s, c| s + c.gain) / F::from(positive.len()).unwrap();
        positive.into_iter().filter(|c| c.gain >= mean - eps).collect()
    };
    pool.into_iter()
        .fold(None, |best: Option<&SplitCandidate<F>>, c| match best {
            Some(b) if c.gain_ratio <= b.gain_ratio => Some(b),
            _ => Some(c),
        })
        .cloned()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GainRatioEntry<F> {
    pub attribute: String,
    pub index: usize,
    pub gain_ratio: F,
    pub gain: F,
    pub split_info: F,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<F>,
}

/// Root-level gain ratio of every attribute, highest first. Attributes with
/// no admissible split score zero.
pub fn gain_ratio_table<F: Float + Scalar>(is: &InformationSystem) -> Vec<GainRatioEntry<F>> {
    let rows: Vec<usize> = (0..is.row_count()).collect();
    let counts = class_counts(is, &rows);
    let h = entropy::<F>(&counts).expect("non-empty universe");
    let mut table: Vec<GainRatioEntry<F>> = (0..is.attribute_count())
        .map(|a| match evaluate_attribute::<F>(is, &rows, a, h, SplitPolicy::default()) {
            Some(c) => GainRatioEntry {
                attribute: c.attribute_name,
                index: a,
                gain_ratio: c.gain_ratio,
                gain: c.gain,
                split_info: c.split_info,
                threshold: c.threshold,
            },
            None => GainRatioEntry {
                attribute: is.attribute(a).name.clone(),
                index: a,
                gain_ratio: F::zero(),
                gain: F::zero(),
                split_info: F::zero(),
                threshold: None,
            },
        })
        .collect();
    table.sort_by(|a, b| b.gain_ratio.partial_cmp(&a.gain_ratio).unwrap_or(std::cmp::Ordering::Equal));
    table
}
