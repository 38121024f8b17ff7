use num_traits::Float;

use crate::dataset::InformationSystem;
use crate::error::{Error, Result};
use crate::roughset::Partition;

fn cast<F: Float>(v: u64) -> F {
    F::from(v).expect("count representable")
}

/// Shannon entropy in bits; empty classes contribute nothing.
pub fn entropy<F: Float>(counts: &[u64]) -> Result<F> {
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(Error::ZeroCounts);
    }
    let n = cast::<F>(total);
    Ok(counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = cast::<F>(c) / n;
            -p * p.log2()
        })
        .fold(F::zero(), |a, b| a + b))
}

/// Size-weighted mean of per-block decision entropies; `blocks[i]` holds
/// the class counts of block `i`.
pub fn conditional_entropy<F: Float>(blocks: &[Vec<u64>]) -> Result<F> {
    let total: u64 = blocks.iter().flatten().sum();
    if blocks.is_empty() || total == 0 {
        return Err(Error::Invalid("conditional entropy of an empty partition".into()));
    }
    let n = cast::<F>(total);
    let mut acc = F::zero();
    for b in blocks {
        let size: u64 = b.iter().sum();
        if size > 0 {
            acc = acc + cast::<F>(size) / n * entropy::<F>(b)?;
        }
    }
    Ok(acc)
}

/// Decision entropy conditioned on the blocks of `partition`.
pub fn conditional_entropy_of<F: Float>(is: &InformationSystem, partition: &Partition) -> Result<F> {
    let blocks: Vec<Vec<u64>> = partition
        .blocks()
        .iter()
        .map(|b| {
            let mut counts = vec![0u64; is.class_count()];
            for &r in b {
                counts[is.decision_of(r) as usize] += 1;
            }
            counts
        })
        .collect();
    conditional_entropy(&blocks)
}

/// Entropy of the branch-size distribution of a split.
pub fn split_info<F: Float>(block_sizes: &[u64], total: u64) -> Result<F> {
    if total == 0 {
        return Err(Error::ZeroCounts);
    }
    if block_sizes.iter().sum::<u64>() != total {
        return Err(Error::Invalid(format!("block sizes do not sum to {total}")));
    }
    entropy(block_sizes)
}
