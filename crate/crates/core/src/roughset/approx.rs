use serde::Serialize;

use crate::attrset::AttributeSet;
use crate::dataset::InformationSystem;
use crate::error::{Error, Result};

use super::partition::{partition_by, Partition};

/// Lower and upper approximation of a target row set under `IND(R)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Approximation {
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
    pub target: Vec<usize>,
    #[serde(skip)]
    pub attributes: AttributeSet,
}

impl Approximation {
    /// `X` is `R`-definable when both approximations coincide.
    pub fn is_definable(&self) -> bool {
        self.lower == self.upper
    }

    pub fn boundary(&self) -> Vec<usize> {
        let lower: std::collections::HashSet<_> = self.lower.iter().collect();
        self.upper.iter().copied().filter(|r| !lower.contains(r)).collect()
    }
}

pub fn approximate(is: &InformationSystem, r: AttributeSet, target: &[usize]) -> Result<Approximation> {
    let partition = partition_by(is, r)?;
    approximate_with(is, &partition, target)
}

pub(crate) fn approximate_with(is: &InformationSystem, partition: &Partition, target: &[usize]) -> Result<Approximation> {
    let n = is.row_count();
    let mut member = vec![false; n];
    for &t in target {
        if t >= n {
            return Err(Error::Invalid(format!("target row {t} outside a universe of {n}")));
        }
        member[t] = true;
    }
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for block in partition.blocks() {
        let inside = block.iter().filter(|&&r| member[r]).count();
        if inside == block.len() {
            lower.extend_from_slice(block);
        }
        if inside > 0 {
            upper.extend_from_slice(block);
        }
    }
    lower.sort_unstable();
    upper.sort_unstable();
    Ok(Approximation {
        lower,
        upper,
        target: (0..n).filter(|&r| member[r]).collect(),
        attributes: partition.attributes(),
    })
}

/// Union of the blocks whose rows all share one decision value.
pub fn positive_region(is: &InformationSystem, partition: &Partition) -> Vec<usize> {
    let mut pos: Vec<usize> = partition
        .blocks()
        .iter()
        .filter(|b| b.iter().all(|&r| is.decision_of(r) == is.decision_of(b[0])))
        .flatten()
        .copied()
        .collect();
    pos.sort_unstable();
    pos
}
