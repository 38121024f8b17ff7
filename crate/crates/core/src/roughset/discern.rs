//! Pairwise discernibility.
//!
//! The scan visits every unordered pair of objects once and folds the
//! per-pair difference set into a [`DiscernibilitySummary`]; the full matrix
//! is only built on request for small universes.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::attrset::AttributeSet;
use crate::dataset::InformationSystem;
use crate::error::{Error, Result};

use super::{partition_by, positive_region, ReductMode};

pub const DEFAULT_MATRIX_CAP: usize = 2_000;

/// Folded view of the discernibility matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscernibilitySummary {
    /// Union of all single-attribute entries.
    pub core: AttributeSet,
    pub singleton_pair_count: u64,
    /// Entries containing each attribute, indexed by attribute position.
    pub entry_histogram: Vec<u64>,
    /// Every unordered pair visited, `n(n-1)/2`.
    pub pair_count: u64,
    /// Pairs that contributed a non-empty entry.
    pub nonempty_entry_count: u64,
    pub attributes: AttributeSet,
    pub mode: ReductMode,
}

/// Serialisable form of a summary with attribute names.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryReport {
    pub mode: ReductMode,
    pub attributes: Vec<String>,
    pub core: Vec<String>,
    pub pair_count: u64,
    pub nonempty_entry_count: u64,
    pub singleton_pair_count: u64,
    pub entry_histogram: Vec<(String, u64)>,
}

impl DiscernibilitySummary {
    pub fn report(&self, is: &InformationSystem) -> SummaryReport {
        SummaryReport {
            mode: self.mode,
            attributes: is.attribute_names(self.attributes),
            core: is.attribute_names(self.core),
            pair_count: self.pair_count,
            nonempty_entry_count: self.nonempty_entry_count,
            singleton_pair_count: self.singleton_pair_count,
            entry_histogram: self
                .attributes
                .iter()
                .map(|a| (is.attribute(a).name.clone(), self.entry_histogram[a]))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    /// `Some(1)` runs on the calling thread; otherwise the current rayon pool is used.
    pub threads: Option<usize>,
    /// Contiguous row ranges the pair triangle is cut into.
    pub blocks: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { threads: None, blocks: 256 }
    }
}

impl ScanOptions {
    pub fn sequential() -> Self {
        ScanOptions { threads: Some(1), blocks: 1 }
    }
}

pub fn discernibility_scan(is: &InformationSystem, r: AttributeSet, mode: ReductMode) -> Result<DiscernibilitySummary> {
    discernibility_scan_with(is, r, mode, ScanOptions::default())
}

pub fn discernibility_scan_with(
    is: &InformationSystem,
    r: AttributeSet,
    mode: ReductMode,
    options: ScanOptions,
) -> Result<DiscernibilitySummary> {
    if r.is_empty() {
        return Err(Error::EmptyAttributeSet);
    }
    r.check_within(is.attribute_count())?;
    let table = CodeTable::new(is, r, mode);
    let ranges = row_ranges(is.row_count(), options.blocks.max(1));
    let acc = if options.threads == Some(1) {
        ranges.iter().fold(Acc::new(table.width), |mut acc, &range| {
            table.scan(range, &mut acc);
            acc
        })
    } else {
        ranges
            .par_iter()
            .map(|&range| {
                let mut acc = Acc::new(table.width);
                table.scan(range, &mut acc);
                acc
            })
            .reduce(|| Acc::new(table.width), Acc::merge)
    };
    Ok(acc.finish(is, &table.positions, r, mode))
}

/// Row-major dense codes for the attributes in `r`.
struct CodeTable {
    width: usize,
    positions: Vec<usize>,
    codes: Vec<u32>,
    decisions: Option<Vec<u32>>,
    /// Rows in the positive region of `r`; only read in decision-relative mode.
    positive: Vec<bool>,
}

impl CodeTable {
    fn new(is: &InformationSystem, r: AttributeSet, mode: ReductMode) -> Self {
        let positions: Vec<usize> = r.iter().collect();
        let width = positions.len();
        let n = is.row_count();
        let mut codes = vec![0u32; n * width];
        for (k, &a) in positions.iter().enumerate() {
            let column = is.column(a);
            let mut distinct = column.to_vec();
            distinct.sort_unstable();
            distinct.dedup();
            for (row, v) in column.iter().enumerate() {
                codes[row * width + k] = distinct.binary_search(v).expect("value present") as u32;
            }
        }
        let decisions = (mode == ReductMode::DecisionRelative).then(|| is.decisions().to_vec());
        let mut positive = Vec::new();
        if decisions.is_some() {
            positive = vec![false; n];
            let partition = partition_by(is, r).expect("attribute set validated");
            for row in positive_region(is, &partition) {
                positive[row] = true;
            }
        }
        CodeTable { width, positions, codes, decisions, positive }
    }

    fn scan(&self, (lo, hi): (usize, usize), acc: &mut Acc) {
        if self.width <= 64 {
            self.scan_rows::<u64>(lo, hi, acc);
        } else {
            self.scan_rows::<u128>(lo, hi, acc);
        }
    }

    fn scan_rows<M: Mask>(&self, lo: usize, hi: usize, acc: &mut Acc) {
        let w = self.width;
        let chunks = acc.byte_counts.len();
        for i in lo..hi {
            acc.pairs += i as u64;
            let xi = &self.codes[i * w..(i + 1) * w];
            for j in 0..i {
                if let Some(d) = &self.decisions {
                    // pairs outside the positive region need not stay apart
                    if d[i] == d[j] || !(self.positive[i] || self.positive[j]) {
                        continue;
                    }
                }
                let xj = &self.codes[j * w..(j + 1) * w];
                let mut mask = M::ZERO;
                for k in 0..w {
                    mask = mask.or_bit(k, xi[k] != xj[k]);
                }
                if mask.is_zero() {
                    continue;
                }
                acc.nonempty += 1;
                for (c, counts) in acc.byte_counts[..chunks].iter_mut().enumerate() {
                    counts[mask.byte(c)] += 1;
                }
                if mask.is_single() {
                    acc.singles += 1;
                    acc.core |= mask.widen();
                }
            }
        }
    }
}

trait Mask: Copy {
    const ZERO: Self;
    fn or_bit(self, k: usize, set: bool) -> Self;
    fn is_zero(self) -> bool;
    fn is_single(self) -> bool;
    fn byte(self, chunk: usize) -> usize;
    fn widen(self) -> u128;
}

impl Mask for u64 {
    const ZERO: Self = 0;
    #[inline(always)]
    fn or_bit(self, k: usize, set: bool) -> Self {
        self | (u64::from(set) << k)
    }
    #[inline(always)]
    fn is_zero(self) -> bool {
        self == 0
    }
    #[inline(always)]
    fn is_single(self) -> bool {
        self & (self - 1) == 0
    }
    #[inline(always)]
    fn byte(self, chunk: usize) -> usize {
        (self >> (8 * chunk)) as usize & 0xff
    }
    fn widen(self) -> u128 {
        u128::from(self)
    }
}

impl Mask for u128 {
    const ZERO: Self = 0;
    #[inline(always)]
    fn or_bit(self, k: usize, set: bool) -> Self {
        self | (u128::from(set) << k)
    }
    #[inline(always)]
    fn is_zero(self) -> bool {
        self == 0
    }
    #[inline(always)]
    fn is_single(self) -> bool {
        self & (self - 1) == 0
    }
    #[inline(always)]
    fn byte(self, chunk: usize) -> usize {
        (self >> (8 * chunk)) as usize & 0xff
    }
    fn widen(self) -> u128 {
        self
    }
}

/// Partial result over a set of pairs. Attribute membership counts are kept
/// per byte of the compact mask and expanded once at the end.
struct Acc {
    byte_counts: Vec<[u64; 256]>,
    singles: u64,
    nonempty: u64,
    pairs: u64,
    core: u128,
}

impl Acc {
    fn new(width: usize) -> Self {
        Acc {
            byte_counts: vec![[0; 256]; width.div_ceil(8)],
            singles: 0,
            nonempty: 0,
            pairs: 0,
            core: 0,
        }
    }

    fn merge(mut self, other: Acc) -> Acc {
        for (a, b) in self.byte_counts.iter_mut().zip(&other.byte_counts) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        self.singles += other.singles;
        self.nonempty += other.nonempty;
        self.pairs += other.pairs;
        self.core |= other.core;
        self
    }

    fn finish(self, is: &InformationSystem, positions: &[usize], r: AttributeSet, mode: ReductMode) -> DiscernibilitySummary {
        let mut entry_histogram = vec![0u64; is.attribute_count()];
        let mut core = AttributeSet::empty();
        for (k, &a) in positions.iter().enumerate() {
            let (chunk, bit) = (k / 8, k % 8);
            entry_histogram[a] = self.byte_counts[chunk]
                .iter()
                .enumerate()
                .filter(|(b, _)| b >> bit & 1 == 1)
                .map(|(_, &c)| c)
                .sum();
            if self.core >> k & 1 == 1 {
                core.insert(a);
            }
        }
        DiscernibilitySummary {
            core,
            singleton_pair_count: self.singles,
            entry_histogram,
            pair_count: self.pairs,
            nonempty_entry_count: self.nonempty,
            attributes: r,
            mode,
        }
    }
}

/// Cuts rows `0..n` into up to `blocks` ranges holding similar pair counts
/// (row `i` pairs with the `i` rows before it).
fn row_ranges(n: usize, blocks: usize) -> Vec<(usize, usize)> {
    let total = (n as u128) * (n.saturating_sub(1) as u128) / 2;
    let mut ranges = Vec::with_capacity(blocks);
    let mut lo = 0;
    for b in 1..=blocks {
        let target = total * b as u128 / blocks as u128;
        // smallest hi with hi(hi-1)/2 >= target
        let mut hi = ((2.0 * target as f64).sqrt() as usize).max(lo);
        while (hi as u128) * (hi.saturating_sub(1) as u128) / 2 < target {
            hi += 1;
        }
        while hi > lo && ((hi - 1) as u128) * (hi.saturating_sub(2) as u128) / 2 >= target {
            hi -= 1;
        }
        let hi = if b == blocks { n } else { hi.min(n) };
        if hi > lo {
            ranges.push((lo, hi));
            lo = hi;
        }
    }
    if lo < n {
        ranges.push((lo, n));
    }
    ranges
}

/// Explicit strictly-lower-triangular discernibility matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscernibilityMatrix {
    n: usize,
    entries: Vec<AttributeSet>,
    attributes: AttributeSet,
}

pub fn materialize_matrix(is: &InformationSystem, r: AttributeSet, max_rows: usize) -> Result<DiscernibilityMatrix> {
    if r.is_empty() {
        return Err(Error::EmptyAttributeSet);
    }
    r.check_within(is.attribute_count())?;
    let n = is.row_count();
    if n > max_rows {
        return Err(Error::MatrixTooLarge { rows: n, cap: max_rows });
    }
    let mut entries = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in 0..i {
            entries.push(r.iter().filter(|&a| is.value(a, i) != is.value(a, j)).collect());
        }
    }
    Ok(DiscernibilityMatrix { n, entries, attributes: r })
}

impl DiscernibilityMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    /// Entry for objects `i` and `j`; the diagonal is empty.
    pub fn entry(&self, i: usize, j: usize) -> AttributeSet {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => AttributeSet::empty(),
            std::cmp::Ordering::Greater => self.entries[i * (i - 1) / 2 + j],
            std::cmp::Ordering::Less => self.entry(j, i),
        }
    }

    /// Folds the stored entries the same way the streaming scan does.
    pub fn summarize(&self, is: &InformationSystem, mode: ReductMode) -> DiscernibilitySummary {
        let mut s = DiscernibilitySummary {
            core: AttributeSet::empty(),
            singleton_pair_count: 0,
            entry_histogram: vec![0; is.attribute_count()],
            pair_count: self.entries.len() as u64,
            nonempty_entry_count: 0,
            attributes: self.attributes,
            mode,
        };
        let mut positive = vec![false; self.n];
        if mode == ReductMode::DecisionRelative {
            let partition = partition_by(is, self.attributes).expect("matrix attributes validated");
            for row in positive_region(is, &partition) {
                positive[row] = true;
            }
        }
        for i in 0..self.n {
            for j in 0..i {
                if mode == ReductMode::DecisionRelative
                    && (is.decision_of(i) == is.decision_of(j) || !(positive[i] || positive[j]))
                {
                    continue;
                }
                let e = self.entry(i, j);
                if e.is_empty() {
                    continue;
                }
                s.nonempty_entry_count += 1;
                if e.len() == 1 {
                    s.singleton_pair_count += 1;
                    s.core = s.core | e;
                }
                for a in e {
                    s.entry_histogram[a] += 1;
                }
            }
        }
        s
    }

    /// Text table with `X1…Xn` headers; each cell lists attribute names joined
    /// by `-`, cut with `…` past `cell_width` characters.
    pub fn render(&self, is: &InformationSystem, cell_width: usize, max_columns: usize) -> String {
        let cols = self.n.min(max_columns);
        let mut out = String::new();
        for c in 0..cols {
            let _ = write!(out, "\tX{}", c + 1);
        }
        out.push('\n');
        for i in 0..self.n {
            let _ = write!(out, "X{}", i + 1);
            for j in 0..cols.min(i) {
                let names: Vec<&str> = self.entry(i, j).iter().map(|a| is.attribute(a).name.as_str()).collect();
                let cell = names.join("-");
                out.push('\t');
                if cell.chars().count() > cell_width {
                    out.extend(cell.chars().take(cell_width));
                    out.push('…');
                } else {
                    out.push_str(&cell);
                }
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_cover_all_rows() {
        for n in [0usize, 1, 2, 3, 10, 101, 4521] {
            for blocks in [1usize, 2, 7, 256] {
                let r = row_ranges(n, blocks);
                let mut next = 0;
                for &(lo, hi) in &r {
                    assert_eq!(lo, next);
                    assert!(hi > lo);
                    next = hi;
                }
                assert_eq!(next, n, "n={n} blocks={blocks}");
            }
        }
    }

    #[test]
    fn single_difference_enters_core() {
        let is = InformationSystem::from_rows(&["a", "b", "c"], &[vec![1, 2, 3], vec![1, 5, 3]], &["n", "n"]).unwrap();
        let s = discernibility_scan(&is, is.all_attributes(), ReductMode::Absolute).unwrap();
        assert_eq!(s.core, AttributeSet::singleton(1));
        assert_eq!(s.pair_count, 1);
        assert_eq!(s.entry_histogram, vec![0, 1, 0]);
        let rel = discernibility_scan(&is, is.all_attributes(), ReductMode::DecisionRelative).unwrap();
        assert!(rel.core.is_empty());
        assert_eq!(rel.pair_count, 1);
    }

    #[test]
    fn identical_rows_contribute_nothing() {
        let rows = vec![vec![4, 4], vec![4, 4], vec![4, 4]];
        let is = InformationSystem::from_rows(&["a", "b"], &rows, &["n", "y", "n"]).unwrap();
        let s = discernibility_scan(&is, is.all_attributes(), ReductMode::Absolute).unwrap();
        assert_eq!((s.pair_count, s.nonempty_entry_count, s.singleton_pair_count), (3, 0, 0));
        let m = materialize_matrix(&is, is.all_attributes(), DEFAULT_MATRIX_CAP).unwrap();
        assert!((0..3).all(|i| (0..3).all(|j| m.entry(i, j).is_empty())));
    }

    #[test]
    fn fully_different_rows_give_full_entry() {
        let is = InformationSystem::from_rows(&["a", "b", "c"], &[vec![1, 2, 3], vec![4, 5, 6]], &["n", "y"]).unwrap();
        let m = materialize_matrix(&is, is.all_attributes(), 10).unwrap();
        assert_eq!(m.entry(1, 0), is.all_attributes());
        assert_eq!(m.entry(0, 1), is.all_attributes());
        assert!(matches!(materialize_matrix(&is, is.all_attributes(), 1), Err(Error::MatrixTooLarge { .. })));
    }

    #[test]
    fn wide_tables_use_the_wide_mask() {
        let width = 70;
        let names: Vec<String> = (0..width).map(|i| format!("a{i}")).collect();
        let mut second = vec![0; width];
        second[66] = 1;
        let is = InformationSystem::from_rows(&names, &[vec![0; width], second, vec![1; width]], &["n".into(), "y".into(), "y".into()]).unwrap();
        let s = discernibility_scan(&is, is.all_attributes(), ReductMode::Absolute).unwrap();
        assert_eq!(s.core, AttributeSet::singleton(66));
        let m = materialize_matrix(&is, is.all_attributes(), 10).unwrap();
        assert_eq!(m.summarize(&is, ReductMode::Absolute), s);
    }

    #[test]
    fn render_truncates_cells() {
        let is = InformationSystem::from_rows(&["age", "job", "marital"], &[vec![1, 2, 3], vec![4, 5, 6]], &["n", "y"]).unwrap();
        let m = materialize_matrix(&is, is.all_attributes(), 10).unwrap();
        let text = m.render(&is, 10, 6);
        assert_eq!(text, "\tX1\tX2\nX1\nX2\tage-job-ma…\n");
    }
}
