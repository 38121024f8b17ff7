//! Exhaustive reduct search over plain row vectors, sharing no code with the
//! partition machinery under test.

use std::collections::{BTreeSet, HashMap, HashSet};

use reductminer::{InformationSystem, ReductMode};

pub struct Table {
    pub rows: Vec<Vec<i64>>,
    pub decisions: Vec<u32>,
    pub width: usize,
}

impl Table {
    pub fn of(is: &InformationSystem) -> Table {
        let width = is.attribute_count();
        let rows = (0..is.row_count()).map(|r| (0..width).map(|a| is.value(a, r)).collect()).collect();
        Table { rows, decisions: is.decisions().to_vec(), width }
    }

    fn key(&self, row: usize, mask: u32) -> Vec<i64> {
        (0..self.width).filter(|a| mask >> a & 1 == 1).map(|a| self.rows[row][a]).collect()
    }

    pub fn class_count(&self, mask: u32) -> usize {
        (0..self.rows.len()).map(|r| self.key(r, mask)).collect::<HashSet<_>>().len()
    }

    pub fn positive_region(&self, mask: u32) -> BTreeSet<usize> {
        let mut seen: HashMap<Vec<i64>, Option<u32>> = HashMap::new();
        for r in 0..self.rows.len() {
            let d = self.decisions[r];
            seen.entry(self.key(r, mask))
                .and_modify(|e| {
                    if *e != Some(d) {
                        *e = None
                    }
                })
                .or_insert(Some(d));
        }
        (0..self.rows.len()).filter(|&r| seen[&self.key(r, mask)].is_some()).collect()
    }

    pub fn full(&self) -> u32 {
        (1u32 << self.width) - 1
    }

    /// Same relation as the full set; for subsets, equal class counts suffice.
    pub fn equivalent(&self, mask: u32, mode: ReductMode) -> bool {
        match mode {
            ReductMode::Absolute => self.class_count(mask) == self.class_count(self.full()),
            ReductMode::DecisionRelative => self.positive_region(mask) == self.positive_region(self.full()),
        }
    }

    /// Both criteria are monotone in the subset, so dropping single members suffices.
    pub fn is_reduct(&self, mask: u32, mode: ReductMode) -> bool {
        self.equivalent(mask, mode)
            && (0..self.width).filter(|a| mask >> a & 1 == 1).all(|a| !self.equivalent(mask & !(1 << a), mode))
    }

    pub fn reducts(&self, mode: ReductMode) -> Vec<u32> {
        (0..=self.full()).filter(|&m| self.is_reduct(m, mode)).collect()
    }

    pub fn core(&self, mode: ReductMode) -> u32 {
        self.reducts(mode).into_iter().fold(self.full(), |acc, m| acc & m)
    }

    /// No two rows agree on every attribute but differ in decision.
    pub fn consistent(&self) -> bool {
        self.positive_region(self.full()).len() == self.rows.len()
    }
}
