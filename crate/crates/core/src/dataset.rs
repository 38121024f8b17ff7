//! Columnar, integer-encoded information systems.
//!
//! Every conditional attribute is stored as a column of `i64`. Categorical and
//! binary columns hold dictionary codes assigned in first-appearance order;
//! numeric columns hold the parsed values (balances may be negative, `pdays`
//! uses -1 as an ordinary value). The decision attribute is always
//! dictionary-encoded and stored separately as `u32` class codes.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::attrset::AttributeSet;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttributeKind {
    Discrete,
    Continuous,
    Categorical,
    Binary,
}

impl AttributeKind {
    pub fn is_coded(self) -> bool {
        matches!(self, AttributeKind::Categorical | AttributeKind::Binary)
    }

    pub fn is_numeric(self) -> bool {
        !self.is_coded()
    }
}

impl fmt::Display for AttributeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AttributeKind::Discrete => "discrete",
            AttributeKind::Continuous => "continuous",
            AttributeKind::Categorical => "categorical",
            AttributeKind::Binary => "binary",
        })
    }
}

/// Per-column metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttributeDescriptor {
    pub name: String,
    pub kind: AttributeKind,
    /// Raw text values for coded kinds; the position is the code.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub dictionary: Vec<String>,
    pub index: usize,
    /// Cut points this column was binned with, if it is a bin-index column.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cut_points: Option<Vec<f64>>,
}

impl AttributeDescriptor {
    fn validate(&self) -> Result<()> {
        let coded = self.kind.is_coded();
        if coded == self.dictionary.is_empty() {
            return Err(Error::Schema(format!(
                "`{}`: {} attribute {} a dictionary",
                self.name,
                self.kind,
                if coded { "requires" } else { "must not carry" }
            )));
        }
        if self.kind == AttributeKind::Binary && self.dictionary.len() != 2 {
            return Err(Error::Schema(format!(
                "`{}`: binary attribute has {} distinct values",
                self.name,
                self.dictionary.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = self.dictionary.iter().find(|v| !seen.insert(v.as_str())) {
            return Err(Error::Schema(format!(
                "`{}`: duplicate dictionary entry {dup:?}",
                self.name
            )));
        }
        Ok(())
    }

    pub fn code_of(&self, label: &str) -> Option<u32> {
        self.dictionary.iter().position(|v| v == label).map(|p| p as u32)
    }

    pub fn is_binned(&self) -> bool {
        self.cut_points.is_some()
    }

    /// Interval covered by bin `k` of a binned attribute, e.g. `(75.5, 211.5]`.
    pub fn bin_label(&self, k: i64) -> Option<String> {
        let cuts = self.cut_points.as_ref()?;
        let k = usize::try_from(k).ok().filter(|&k| k <= cuts.len())?;
        let lo = if k == 0 { "-inf".to_string() } else { cuts[k - 1].to_string() };
        Some(match cuts.get(k) {
            Some(hi) => format!("({lo}, {hi}]"),
            None => format!("({lo}, +inf)"),
        })
    }
}

/// A single cell value, either numeric or raw categorical text.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Text(String),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Text(s) => f.write_str(s),
        }
    }
}

/// Optional overrides applied while loading a delimited file.
///
/// JSON form: `{"decision": "y", "attributes": {"age": "discrete", "job": "categorical"}}`.
/// Columns without an entry get their kind inferred: all-integer columns are
/// discrete, two-valued text columns binary, other text columns categorical.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Schema {
    #[serde(default)]
    pub decision: Option<String>,
    #[serde(default)]
    pub attributes: BTreeMap<String, AttributeKind>,
}

impl Schema {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// `U` with conditional attributes `C` and one decision attribute `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct InformationSystem {
    attributes: Vec<AttributeDescriptor>,
    decision: AttributeDescriptor,
    columns: Vec<Vec<i64>>,
    decisions: Vec<u32>,
    class_counts: Vec<u64>,
}

impl InformationSystem {
    pub fn new(
        attributes: Vec<AttributeDescriptor>,
        decision: AttributeDescriptor,
        columns: Vec<Vec<i64>>,
        decisions: Vec<u32>,
    ) -> Result<Self> {
        let rows = decisions.len();
        if rows == 0 {
            return Err(Error::EmptyUniverse);
        }
        if attributes.len() > AttributeSet::CAPACITY {
            return Err(Error::Schema(format!(
                "{} conditional attributes exceed the supported {}",
                attributes.len(),
                AttributeSet::CAPACITY
            )));
        }
        if attributes.len() != columns.len() {
            return Err(Error::Schema("attribute and column counts differ".into()));
        }
        if !decision.kind.is_coded() {
            return Err(Error::Schema("the decision attribute must be dictionary-encoded".into()));
        }
        decision.validate()?;
        let mut names = std::collections::HashSet::new();
        for (i, (a, col)) in attributes.iter().zip(&columns).enumerate() {
            a.validate()?;
            if a.index != i {
                return Err(Error::Schema(format!("`{}` has index {} at position {i}", a.name, a.index)));
            }
            if !names.insert(a.name.as_str()) {
                return Err(Error::Schema(format!("duplicate attribute name `{}`", a.name)));
            }
            if col.len() != rows {
                return Err(Error::Schema(format!("column `{}` has {} rows, expected {rows}", a.name, col.len())));
            }
            if a.kind.is_coded() {
                let n = a.dictionary.len() as i64;
                if let Some(bad) = col.iter().find(|&&v| v < 0 || v >= n) {
                    return Err(Error::Schema(format!("`{}`: code {bad} outside dictionary", a.name)));
                }
            }
        }
        if names.contains(decision.name.as_str()) {
            return Err(Error::Schema(format!(
                "decision attribute `{}` is also a conditional attribute",
                decision.name
            )));
        }
        let mut class_counts = vec![0u64; decision.dictionary.len()];
        for &d in &decisions {
            *class_counts
                .get_mut(d as usize)
                .ok_or_else(|| Error::Schema(format!("decision code {d} outside dictionary")))? += 1;
        }
        Ok(InformationSystem {
            attributes,
            decision,
            columns,
            decisions,
            class_counts,
        })
    }

    /// Builds a system of discrete attributes from row tuples and decision labels.
    pub fn from_rows<S: AsRef<str>>(names: &[S], rows: &[Vec<i64>], decisions: &[S]) -> Result<Self> {
        if rows.len() != decisions.len() {
            return Err(Error::Schema("row and decision counts differ".into()));
        }
        let attributes = names
            .iter()
            .enumerate()
            .map(|(index, n)| AttributeDescriptor {
                name: n.as_ref().to_string(),
                kind: AttributeKind::Discrete,
                dictionary: Vec::new(),
                index,
                cut_points: None,
            })
            .collect::<Vec<_>>();
        let mut columns = vec![Vec::with_capacity(rows.len()); names.len()];
        for (r, row) in rows.iter().enumerate() {
            if row.len() != names.len() {
                return Err(Error::MalformedRow {
                    row: r as u64 + 1,
                    expected: names.len(),
                    found: row.len(),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                columns[c].push(v);
            }
        }
        let mut encoder = Encoder::default();
        let codes = decisions.iter().map(|d| encoder.code(d.as_ref())).collect();
        let decision = AttributeDescriptor {
            name: "decision".into(),
            kind: if encoder.values.len() == 2 { AttributeKind::Binary } else { AttributeKind::Categorical },
            dictionary: encoder.values,
            index: names.len(),
            cut_points: None,
        };
        Self::new(attributes, decision, columns, codes)
    }

    pub fn row_count(&self) -> usize {
        self.decisions.len()
    }

    pub fn attribute_count(&self) -> usize {
        self.attributes.len()
    }

    pub fn attributes(&self) -> &[AttributeDescriptor] {
        &self.attributes
    }

    pub fn attribute(&self, index: usize) -> &AttributeDescriptor {
        &self.attributes[index]
    }

    pub fn decision(&self) -> &AttributeDescriptor {
        &self.decision
    }

    pub fn all_attributes(&self) -> AttributeSet {
        AttributeSet::full(self.attributes.len())
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a.name == name)
    }

    pub fn attribute_set<S: AsRef<str>>(&self, names: &[S]) -> Result<AttributeSet> {
        names
            .iter()
            .map(|n| self.attribute_index(n.as_ref()).ok_or_else(|| Error::UnknownAttribute(n.as_ref().into())))
            .collect()
    }

    pub fn attribute_names(&self, set: AttributeSet) -> Vec<String> {
        set.iter().map(|i| self.attributes[i].name.clone()).collect()
    }

    pub fn column(&self, index: usize) -> &[i64] {
        &self.columns[index]
    }

    pub fn value(&self, attribute: usize, row: usize) -> i64 {
        self.columns[attribute][row]
    }

    /// Raw text of a cell; numeric cells render as integers, binned cells as their interval.
    pub fn cell_text(&self, attribute: usize, row: usize) -> String {
        let a = &self.attributes[attribute];
        let v = self.columns[attribute][row];
        if a.kind.is_coded() {
            a.dictionary[v as usize].clone()
        } else {
            a.bin_label(v).unwrap_or_else(|| v.to_string())
        }
    }

    pub fn cell(&self, attribute: usize, row: usize) -> Value {
        let a = &self.attributes[attribute];
        let v = self.columns[attribute][row];
        if a.kind.is_coded() {
            Value::Text(a.dictionary[v as usize].clone())
        } else {
            Value::Int(v)
        }
    }

    pub fn decisions(&self) -> &[u32] {
        &self.decisions
    }

    pub fn decision_of(&self, row: usize) -> u32 {
        self.decisions[row]
    }

    pub fn class_count(&self) -> usize {
        self.decision.dictionary.len()
    }

    /// Records per decision code.
    pub fn class_counts(&self) -> &[u64] {
        &self.class_counts
    }

    pub fn decision_label(&self, code: u32) -> &str {
        &self.decision.dictionary[code as usize]
    }

    pub fn decision_code(&self, label: &str) -> Option<u32> {
        self.decision.code_of(label)
    }

    /// The class an ambiguous majority falls back to: most frequent overall,
    /// then lowest code.
    pub fn class_preference(&self) -> impl Fn(u32, u32) -> std::cmp::Ordering + '_ {
        move |a, b| {
            self.class_counts[a as usize]
                .cmp(&self.class_counts[b as usize])
                .then(b.cmp(&a))
        }
    }

    /// Argmax over `counts` with the global tie-break.
    pub fn majority_class(&self, counts: &[u64]) -> u32 {
        let pref = self.class_preference();
        (0..counts.len() as u32)
            .max_by(|&a, &b| counts[a as usize].cmp(&counts[b as usize]).then_with(|| pref(a, b)))
            .unwrap_or(0)
    }

    /// Checks that `other` has the same attribute names, kinds and decision name.
    pub fn check_compatible(&self, other: &InformationSystem) -> Result<()> {
        let sig = |is: &InformationSystem| {
            (
                is.attributes.iter().map(|a| (a.name.clone(), a.kind.is_coded(), a.cut_points.clone())).collect::<Vec<_>>(),
                is.decision.name.clone(),
            )
        };
        if sig(self) != sig(other) {
            return Err(Error::Schema("datasets have different schemas".into()));
        }
        Ok(())
    }

    /// Returns a new system whose named numeric attributes are replaced by bin
    /// indices. Values map to bin `k` when `cut[k-1] < v <= cut[k]`.
    #[must_use = "binning returns a new system"]
    pub fn apply_binning<F: Scalar>(&self, specs: &[BinningSpec<F>]) -> Result<InformationSystem> {
        let mut out = self.clone();
        for spec in specs {
            let Some(index) = self.attribute_index(&spec.attribute) else {
                let reason = if spec.attribute == self.decision.name {
                    "the decision attribute cannot be binned"
                } else {
                    return Err(Error::UnknownAttribute(spec.attribute.clone()));
                };
                return Err(Error::Binning { attribute: spec.attribute.clone(), reason: reason.into() });
            };
            let desc = &mut out.attributes[index];
            if desc.kind.is_coded() {
                return Err(Error::Binning {
                    attribute: spec.attribute.clone(),
                    reason: format!("{} attributes have no numeric order", desc.kind),
                });
            }
            if desc.is_binned() {
                return Err(Error::Binning {
                    attribute: spec.attribute.clone(),
                    reason: "attribute is already binned".into(),
                });
            }
            out.columns[index] = self.columns[index].iter().map(|&v| spec.bin_of(v) as i64).collect();
            desc.kind = AttributeKind::Discrete;
            desc.cut_points = Some(spec.cut_points.iter().map(|c| c.to_f64_lossy()).collect());
        }
        Ok(out)
    }

    /// Per-attribute metadata and the decision class distribution.
    pub fn describe(&self) -> DatasetSummary {
        let attributes = self
            .attributes
            .iter()
            .zip(&self.columns)
            .map(|(a, col)| {
                let mut distinct: Vec<i64> = col.clone();
                distinct.sort_unstable();
                distinct.dedup();
                let numeric = a.kind.is_numeric();
                AttributeSummary {
                    name: a.name.clone(),
                    kind: a.kind,
                    index: a.index,
                    distinct: distinct.len(),
                    min: numeric.then(|| distinct[0]),
                    max: numeric.then(|| distinct[distinct.len() - 1]),
                    dictionary: a.dictionary.clone(),
                    cut_points: a.cut_points.clone(),
                }
            })
            .collect();
        DatasetSummary {
            rows: self.row_count(),
            conditional_attributes: self.attribute_count(),
            attributes,
            decision: DecisionSummary {
                name: self.decision.name.clone(),
                distribution: self
                    .decision
                    .dictionary
                    .iter()
                    .zip(&self.class_counts)
                    .map(|(label, &count)| ClassCount { label: label.clone(), count })
                    .collect(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSummary {
    pub rows: usize,
    pub conditional_attributes: usize,
    pub attributes: Vec<AttributeSummary>,
    pub decision: DecisionSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttributeSummary {
    pub name: String,
    pub kind: AttributeKind,
    pub index: usize,
    pub distinct: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max: Option<i64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub dictionary: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cut_points: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionSummary {
    pub name: String,
    pub distribution: Vec<ClassCount>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassCount {
    pub label: String,
    pub count: u64,
}

impl fmt::Display for DatasetSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rows: {}  conditional attributes: {}", self.rows, self.conditional_attributes)?;
        for a in &self.attributes {
            write!(f, "  {:>3} {:<12} {:<11} distinct={:<6}", a.index, a.name, a.kind.to_string(), a.distinct)?;
            if let (Some(lo), Some(hi)) = (a.min, a.max) {
                write!(f, " min={lo} max={hi}")?;
            }
            if !a.dictionary.is_empty() {
                write!(f, " [{}]", a.dictionary.join(", "))?;
            }
            writeln!(f)?;
        }
        write!(f, "decision {}:", self.decision.name)?;
        for c in &self.decision.distribution {
            write!(f, " {}={}", c.label, c.count)?;
        }
        writeln!(f)
    }
}

/// Cut points for one numeric attribute; `n` cuts yield `n + 1` bins.
#[derive(Debug, Clone, PartialEq)]
pub struct BinningSpec<F> {
    pub attribute: String,
    cut_points: Vec<F>,
}

impl<F: Scalar> BinningSpec<F> {
    pub fn new(attribute: impl Into<String>, cut_points: Vec<F>) -> Result<Self> {
        let attribute = attribute.into();
        if cut_points.is_empty() {
            return Err(Error::Binning { attribute, reason: "no cut points".into() });
        }
        if cut_points.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Binning { attribute, reason: "cut points must be strictly ascending".into() });
        }
        Ok(BinningSpec { attribute, cut_points })
    }

    pub fn cut_points(&self) -> &[F] {
        &self.cut_points
    }

    pub fn bin_count(&self) -> usize {
        self.cut_points.len() + 1
    }

    pub fn bin_of(&self, value: i64) -> usize {
        let v = F::from_cell(value);
        self.cut_points.partition_point(|c| *c < v)
    }

    /// Parses `{"attribute": [cut, ...], ...}`; specs come back in name order.
    pub fn parse_map(text: &str) -> Result<Vec<Self>> {
        let raw: BTreeMap<String, Vec<f64>> = serde_json::from_str(text)?;
        raw.into_iter()
            .map(|(attribute, cuts)| {
                let cuts = cuts
                    .into_iter()
                    .map(|c| {
                        F::from_f64_exact(c).ok_or_else(|| Error::Binning {
                            attribute: attribute.clone(),
                            reason: format!("cut point {c} is not representable"),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::new(attribute, cuts)
            })
            .collect()
    }
}

#[derive(Default)]
struct Encoder {
    index: HashMap<String, u32>,
    values: Vec<String>,
}

impl Encoder {
    fn code(&mut self, raw: &str) -> u32 {
        if let Some(&c) = self.index.get(raw) {
            return c;
        }
        let c = self.values.len() as u32;
        self.index.insert(raw.to_string(), c);
        self.values.push(raw.to_string());
        c
    }
}

pub fn load_csv(path: impl AsRef<Path>, schema: Option<&Schema>, delimiter: u8) -> Result<InformationSystem> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    read_csv(std::io::BufReader::new(file), schema, delimiter)
}

/// Reads delimiter-separated text with a header row. Quoted fields are
/// unquoted; the decision column is the last one unless the schema names it.
pub fn read_csv<R: Read>(reader: R, schema: Option<&Schema>, delimiter: u8) -> Result<InformationSystem> {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(false)
        .flexible(true)
        .from_reader(reader);
    let mut records = rdr.records();
    let header = match records.next() {
        Some(h) => h?,
        None => return Err(Error::MissingHeader),
    };
    let names: Vec<String> = header.iter().map(str::to_string).collect();
    if names.len() < 2 {
        return Err(Error::Schema("need at least one conditional attribute and a decision".into()));
    }
    let width = names.len();

    let mut cells: Vec<Vec<String>> = vec![Vec::new(); width];
    let mut lines: Vec<u64> = Vec::new();
    for rec in records {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != width {
            return Err(Error::MalformedRow { row: line, expected: width, found: rec.len() });
        }
        for (col, field) in cells.iter_mut().zip(rec.iter()) {
            col.push(field.to_string());
        }
        lines.push(line);
    }
    if lines.is_empty() {
        return Err(Error::EmptyUniverse);
    }

    let default_schema = Schema::default();
    let schema = schema.unwrap_or(&default_schema);
    for name in schema.attributes.keys() {
        if !names.contains(name) {
            return Err(Error::UnknownAttribute(name.clone()));
        }
    }
    let decision_pos = match &schema.decision {
        Some(d) => names.iter().position(|n| n == d).ok_or_else(|| Error::UnknownAttribute(d.clone()))?,
        None => width - 1,
    };

    let mut attributes = Vec::with_capacity(width - 1);
    let mut columns = Vec::with_capacity(width - 1);
    let mut decision = None;
    for (pos, (name, raw)) in names.iter().zip(cells).enumerate() {
        if pos == decision_pos {
            let mut enc = Encoder::default();
            let codes: Vec<u32> = raw.iter().map(|v| enc.code(v)).collect();
            let kind = if enc.values.len() == 2 { AttributeKind::Binary } else { AttributeKind::Categorical };
            let desc = AttributeDescriptor {
                name: name.clone(),
                kind,
                dictionary: enc.values,
                index: width - 1,
                cut_points: None,
            };
            decision = Some((desc, codes));
            continue;
        }
        let parsed: Option<Vec<i64>> = raw.iter().map(|v| v.trim().parse::<i64>().ok()).collect();
        let kind = match (schema.attributes.get(name), &parsed) {
            (Some(&k), _) => k,
            (None, Some(_)) => AttributeKind::Discrete,
            (None, None) => {
                let mut distinct: Vec<&String> = raw.iter().collect();
                distinct.sort();
                distinct.dedup();
                if distinct.len() == 2 { AttributeKind::Binary } else { AttributeKind::Categorical }
            }
        };
        let column = if kind.is_coded() {
            let mut enc = Encoder::default();
            let codes = raw.iter().map(|v| i64::from(enc.code(v))).collect();
            attributes.push((name.clone(), kind, enc.values));
            codes
        } else {
            match parsed {
                Some(values) => {
                    attributes.push((name.clone(), kind, Vec::new()));
                    values
                }
                None => {
                    let (i, bad) = raw.iter().enumerate().find(|(_, v)| v.trim().parse::<i64>().is_err()).expect("unparsed cell");
                    return Err(Error::BadNumber { row: lines[i], column: name.clone(), value: bad.clone() });
                }
            }
        };
        columns.push(column);
    }
    let attributes = attributes
        .into_iter()
        .enumerate()
        .map(|(index, (name, kind, dictionary))| AttributeDescriptor { name, kind, dictionary, index, cut_points: None })
        .collect();
    let (decision, decisions) = decision.expect("decision column present");
    InformationSystem::new(attributes, decision, columns, decisions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    const SAMPLE: &str = "\"age\";\"job\";\"balance\";\"housing\";\"pdays\";\"y\"\n\
        30;\"unemployed\";1787;\"no\";-1;\"no\"\n\
        33;\"services\";-4789;\"yes\";339;\"no\"\n\
        35;\"management\";1350;\"yes\";330;\"yes\"\n\
        30;\"services\";0;\"no\";-1;\"no\"\n";

    fn sample() -> InformationSystem {
        read_csv(SAMPLE.as_bytes(), None, b';').unwrap()
    }

    #[test]
    fn loads_and_encodes_in_first_appearance_order() {
        let is = sample();
        assert_eq!(is.row_count(), 4);
        assert_eq!(is.attribute_count(), 5);
        assert_eq!(is.decision().name, "y");
        let job = is.attribute(1);
        assert_eq!(job.kind, AttributeKind::Categorical);
        assert_eq!(job.dictionary, ["unemployed", "services", "management"]);
        assert_eq!(is.column(1), &[0, 1, 2, 1]);
        assert_eq!(is.attribute(3).kind, AttributeKind::Binary);
        assert_eq!(is.column(2), &[1787, -4789, 1350, 0]);
        assert_eq!(is.column(4), &[-1, 339, 330, -1]);
        assert_eq!(is.class_counts(), &[3, 1]);
    }

    #[test]
    fn decoding_reproduces_source_text() {
        let is = sample();
        let mut rdr = csv::ReaderBuilder::new().delimiter(b';').from_reader(SAMPLE.as_bytes());
        for (row, rec) in rdr.records().enumerate() {
            let rec = rec.unwrap();
            for a in 0..is.attribute_count() {
                assert_eq!(is.cell_text(a, row), &rec[a]);
            }
            assert_eq!(is.decision_label(is.decision_of(row)), &rec[5]);
        }
    }

    #[test]
    fn header_only_is_empty_universe() {
        let err = read_csv("a;b;y\n".as_bytes(), None, b';').unwrap_err();
        assert!(matches!(err, Error::EmptyUniverse));
        assert!(matches!(read_csv("".as_bytes(), None, b';').unwrap_err(), Error::MissingHeader));
    }

    #[test]
    fn malformed_row_reports_line() {
        let err = read_csv("a;b;y\n1;2;n\n1;n\n".as_bytes(), None, b';').unwrap_err();
        assert!(matches!(err, Error::MalformedRow { row: 3, expected: 3, found: 2 }), "{err}");
    }

    #[test]
    fn bad_number_reports_row_and_column() {
        let schema = Schema { decision: None, attributes: [("b".to_string(), AttributeKind::Discrete)].into() };
        let err = read_csv("a;b;y\n1;2;n\n1;x;n\n".as_bytes(), Some(&schema), b';').unwrap_err();
        match err {
            Error::BadNumber { row, column, value } => {
                assert_eq!((row, column.as_str(), value.as_str()), (3, "b", "x"));
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn schema_can_move_the_decision() {
        let schema = Schema { decision: Some("y".into()), attributes: BTreeMap::new() };
        let is = read_csv("y,a,b\nn,1,2\ny,3,4\n".as_bytes(), Some(&schema), b',').unwrap();
        assert_eq!(is.decision().name, "y");
        assert_eq!(is.attribute_names(is.all_attributes()), ["a", "b"]);
    }

    #[test]
    fn binning_is_left_open_right_closed() {
        let is = InformationSystem::from_rows(&["age"], &[vec![18], vec![25], vec![26], vec![60], vec![61]], &["n", "n", "y", "n", "y"]).unwrap();
        let spec = BinningSpec::new("age", vec![25.0, 30.0, 60.0]).unwrap();
        let binned = is.apply_binning(&[spec]).unwrap();
        assert_eq!(binned.column(0), &[0, 0, 1, 2, 3]);
        assert_eq!(binned.attribute(0).cut_points.as_deref(), Some(&[25.0, 30.0, 60.0][..]));
        assert_eq!(is.column(0), &[18, 25, 26, 60, 61]);

        let exact = BinningSpec::new("age", vec![Ratio::new(51, 2), Ratio::from_integer(60)]).unwrap();
        assert_eq!(is.apply_binning(&[exact]).unwrap().column(0), &[0, 0, 1, 1, 2]);
    }

    #[test]
    fn binning_rejections() {
        assert!(BinningSpec::<f64>::new("a", vec![]).is_err());
        assert!(BinningSpec::new("a", vec![2.0, 2.0]).is_err());
        let is = sample();
        let job = BinningSpec::new("job", vec![1.0]).unwrap();
        assert!(matches!(is.apply_binning(&[job]), Err(Error::Binning { .. })));
        let y = BinningSpec::new("y", vec![1.0]).unwrap();
        assert!(matches!(is.apply_binning(&[y]), Err(Error::Binning { .. })));
        let missing = BinningSpec::new("nope", vec![1.0]).unwrap();
        assert!(matches!(is.apply_binning(&[missing]), Err(Error::UnknownAttribute(_))));
    }

    #[test]
    fn binning_map_parses_in_name_order() {
        let specs = BinningSpec::<f64>::parse_map(r#"{"duration": [75.5, 211.5, 645.5], "age": [25, 30]}"#).unwrap();
        assert_eq!(specs[0].attribute, "age");
        assert_eq!(specs[1].cut_points(), &[75.5, 211.5, 645.5]);
        assert_eq!(specs[1].bin_count(), 4);
    }

    #[test]
    fn describe_single_row_has_min_eq_max() {
        let is = read_csv("a;b;c;y\n5;x;-3;n\n".as_bytes(), None, b';').unwrap();
        let s = is.describe();
        for a in &s.attributes {
            assert_eq!(a.min, a.max);
        }
        assert_eq!(s.attributes[1].dictionary, ["x"]);
        assert_eq!(s.decision.distribution[0].count, 1);
    }

    #[test]
    fn invariants_rejected() {
        let d = AttributeDescriptor { name: "y".into(), kind: AttributeKind::Binary, dictionary: vec!["a".into(), "b".into()], index: 1, cut_points: None };
        let a = AttributeDescriptor { name: "y".into(), kind: AttributeKind::Discrete, dictionary: vec![], index: 0, cut_points: None };
        assert!(InformationSystem::new(vec![a.clone()], d.clone(), vec![vec![1]], vec![0]).is_err());
        let bad = AttributeDescriptor { name: "c".into(), kind: AttributeKind::Categorical, dictionary: vec!["p".into()], index: 0, cut_points: None };
        assert!(InformationSystem::new(vec![bad], d, vec![vec![1]], vec![0]).is_err());
    }
}
