use crate::attrset::AttributeSet;
use crate::dataset::InformationSystem;
use crate::error::{Error, Result};

/// Equivalence classes of `IND(R)`.
///
/// Blocks are ascending row lists, ordered by their smallest member, so two
/// partitions of the same universe are equal exactly when they induce the
/// same relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    attributes: AttributeSet,
}

/// Partition of the universe under `IND(r)`; `r` must be non-empty.
pub fn partition_by(is: &InformationSystem, r: AttributeSet) -> Result<Partition> {
    if r.is_empty() {
        return Err(Error::EmptyAttributeSet);
    }
    r.check_within(is.attribute_count())?;
    Ok(r.iter().fold(Partition::trivial(is), |p, a| p.refine(is, a)))
}

impl Partition {
    /// `IND(∅)`: the whole universe in one block.
    pub fn trivial(is: &InformationSystem) -> Self {
        Partition {
            blocks: vec![(0..is.row_count()).collect()],
            attributes: AttributeSet::empty(),
        }
    }

    /// Splits every block by the value of attribute `a`.
    #[must_use]
    pub fn refine(&self, is: &InformationSystem, a: usize) -> Partition {
        let column = is.column(a);
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for block in &self.blocks {
            if block.len() == 1 {
                blocks.push(block.clone());
                continue;
            }
            let mut keyed: Vec<(i64, usize)> = block.iter().map(|&r| (column[r], r)).collect();
            keyed.sort_unstable();
            let mut start = 0;
            for end in 1..=keyed.len() {
                if end == keyed.len() || keyed[end].0 != keyed[start].0 {
                    blocks.push(keyed[start..end].iter().map(|&(_, r)| r).collect());
                    start = end;
                }
            }
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Partition {
            blocks,
            attributes: self.attributes.with(a),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn attributes(&self) -> AttributeSet {
        self.attributes
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn row_count(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Block index of every row.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.row_count()];
        for (b, block) in self.blocks.iter().enumerate() {
            for &r in block {
                labels[r] = b;
            }
        }
        labels
    }

    /// Same relation, regardless of which attributes induced it.
    pub fn same_relation(&self, other: &Partition) -> bool {
        self.blocks == other.blocks
    }

    /// Every block of `self` lies inside some block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        let labels = coarser.labels();
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&r| labels[r] == labels[b[0]]))
    }
}
