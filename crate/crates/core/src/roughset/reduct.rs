use serde::Serialize;

use crate::attrset::AttributeSet;
use crate::dataset::InformationSystem;
use crate::error::{Error, Result};

use super::approx::positive_region;
use super::discern::discernibility_scan;
use super::partition::{partition_by, Partition};
use super::ReductMode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductVerdict {
    /// Equivalent to the baseline and no attribute can be dropped.
    Reduct,
    /// Equivalent to the baseline, but some attribute is redundant.
    Dependent,
    NotEquivalent,
}

fn partition_or_trivial(is: &InformationSystem, r: AttributeSet) -> Partition {
    if r.is_empty() {
        Partition::trivial(is)
    } else {
        partition_by(is, r).expect("attribute set validated")
    }
}

/// Absolute check: `IND(r) = IND(baseline)` and every member of `r` is indispensable.
pub fn is_reduct(is: &InformationSystem, r: AttributeSet, baseline: AttributeSet) -> Result<ReductVerdict> {
    is_reduct_in(is, r, baseline, ReductMode::Absolute)
}

/// As [`is_reduct`]; in decision-relative mode equivalence means an equal
/// positive region of the decision.
pub fn is_reduct_in(
    is: &InformationSystem,
    r: AttributeSet,
    baseline: AttributeSet,
    mode: ReductMode,
) -> Result<ReductVerdict> {
    if r.is_empty() || baseline.is_empty() {
        return Err(Error::EmptyAttributeSet);
    }
    baseline.check_within(is.attribute_count())?;
    if !r.is_subset(baseline) {
        return Err(Error::Invalid("candidate reduct is not a subset of the baseline".into()));
    }
    let equivalent = |a: &Partition, b: &Partition| match mode {
        ReductMode::Absolute => a.same_relation(b),
        ReductMode::DecisionRelative => positive_region(is, a) == positive_region(is, b),
    };
    let full = partition_by(is, baseline)?;
    let own = partition_by(is, r)?;
    if !equivalent(&own, &full) {
        return Ok(ReductVerdict::NotEquivalent);
    }
    for a in r {
        if equivalent(&partition_or_trivial(is, r.without(a)), &own) {
            return Ok(ReductVerdict::Dependent);
        }
    }
    Ok(ReductVerdict::Reduct)
}

/// Tracks whether a subset of `C` already matches `C`. Subsets only ever
/// coarsen `IND(C)` and shrink its positive region, so counts suffice.
struct Target {
    mode: ReductMode,
    blocks: usize,
    positive: usize,
}

impl Target {
    fn new(is: &InformationSystem, mode: ReductMode) -> Self {
        let full = partition_by(is, is.all_attributes()).expect("non-empty attribute list");
        Target { mode, blocks: full.len(), positive: positive_region(is, &full).len() }
    }

    fn reached(&self, is: &InformationSystem, p: &Partition) -> bool {
        match self.mode {
            ReductMode::Absolute => p.len() == self.blocks,
            ReductMode::DecisionRelative => positive_region(is, p).len() == self.positive,
        }
    }
}

fn pairs(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Pairs inside `p`'s blocks that attribute `a` would newly discern. In
/// decision-relative mode only pairs with different decisions count.
fn undiscerned_hits(is: &InformationSystem, p: &Partition, a: usize, mode: ReductMode) -> u64 {
    let column = is.column(a);
    let mut total = 0;
    let mut keyed: Vec<(i64, u32)> = Vec::new();
    for block in p.blocks() {
        if block.len() < 2 {
            continue;
        }
        keyed.clear();
        keyed.extend(block.iter().map(|&r| (column[r], is.decision_of(r))));
        keyed.sort_unstable();
        match mode {
            ReductMode::Absolute => {
                let same: u64 = runs(&keyed, |x| x.0).map(pairs).sum();
                total += pairs(block.len() as u64) - same;
            }
            ReductMode::DecisionRelative => {
                // pairs with differing decision, minus those that also share a's value
                let mut by_decision = std::collections::HashMap::<u32, u64>::new();
                for &(_, d) in &keyed {
                    *by_decision.entry(d).or_default() += 1;
                }
                let cross = pairs(block.len() as u64) - by_decision.values().copied().map(pairs).sum::<u64>();
                let mut cross_same_value = 0;
                let mut start = 0;
                for len in runs(&keyed, |x| x.0) {
                    let group = &keyed[start..start + len as usize];
                    let within: u64 = runs(group, |x| x.1).map(pairs).sum();
                    cross_same_value += pairs(len) - within;
                    start += len as usize;
                }
                total += cross - cross_same_value;
            }
        }
    }
    total
}

/// Lengths of runs of equal keys in a sorted slice.
fn runs<'a, T, K: PartialEq>(sorted: &'a [T], key: impl Fn(&T) -> K + 'a) -> impl Iterator<Item = u64> + 'a {
    let mut start = 0;
    std::iter::from_fn(move || {
        if start >= sorted.len() {
            return None;
        }
        let k = key(&sorted[start]);
        let mut end = start + 1;
        while end < sorted.len() && key(&sorted[end]) == k {
            end += 1;
        }
        let len = (end - start) as u64;
        start = end;
        Some(len)
    })
}

/// Greedy reduct seeded with the scan's core.
///
/// Returns the empty set only when the full attribute set discerns nothing
/// (a single `IND(C)` block, or an empty positive region).
pub fn greedy_reduct(is: &InformationSystem, mode: ReductMode) -> Result<AttributeSet> {
    let summary = discernibility_scan(is, is.all_attributes(), mode)?;
    greedy_reduct_from_core(is, mode, summary.core)
}

/// Adds, one at a time, the attribute that discerns the most still-merged
/// pairs (lowest index on ties) until the partition matches `IND(C)` (or its
/// positive region), then drops every attribute that turns out redundant.
pub fn greedy_reduct_from_core(is: &InformationSystem, mode: ReductMode, core: AttributeSet) -> Result<AttributeSet> {
    core.check_within(is.attribute_count())?;
    let target = Target::new(is, mode);
    let mut result = core;
    let mut p = partition_or_trivial(is, result);
    while !target.reached(is, &p) {
        let best = is
            .all_attributes()
            .difference(result)
            .iter()
            .map(|a| (undiscerned_hits(is, &p, a, mode), a))
            .max_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)))
            .expect("an unreached target leaves attributes to add");
        result.insert(best.1);
        p = p.refine(is, best.1);
    }
    for a in result.iter().collect::<Vec<_>>().into_iter().rev() {
        let candidate = result.without(a);
        if target.reached(is, &partition_or_trivial(is, candidate)) {
            result = candidate;
        }
    }
    Ok(result)
}
