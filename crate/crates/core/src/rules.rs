//! Decision rules and their exact evaluation.
//!
//! Rules refer to attributes and values by name and raw text, so one rule
//! list can be evaluated against any information system with matching column
//! names. Counts are exact; confidences are `hits / support` ratios.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::dataset::{AttributeDescriptor, InformationSystem, Value};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bound<F> {
    pub value: F,
    pub inclusive: bool,
}

impl<F> Bound<F> {
    pub fn inclusive(value: F) -> Self {
        Bound { value, inclusive: true }
    }

    pub fn exclusive(value: F) -> Self {
        Bound { value, inclusive: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConditionForm<F> {
    Interval { lower: Option<Bound<F>>, upper: Option<Bound<F>> },
    Equals(Value),
}

/// One conjunct of a rule antecedent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ConditionSpec", into = "ConditionSpec")]
#[serde(bound = "F: Scalar")]
pub struct Condition<F> {
    pub attribute: String,
    pub form: ConditionForm<F>,
}

impl<F: Scalar> Condition<F> {
    pub fn interval(attribute: impl Into<String>, lower: Option<Bound<F>>, upper: Option<Bound<F>>) -> Result<Self> {
        let attribute = attribute.into();
        match (&lower, &upper) {
            (None, None) => {
                return Err(Error::InvalidCondition { attribute, reason: "interval needs at least one bound".into() })
            }
            (Some(l), Some(u)) if !(l.value < u.value) => {
                return Err(Error::InvalidCondition { attribute, reason: format!("empty interval {} .. {}", l.value, u.value) })
            }
            _ => {}
        }
        Ok(Condition { attribute, form: ConditionForm::Interval { lower, upper } })
    }

    pub fn le(attribute: impl Into<String>, value: F) -> Self {
        Self::interval(attribute, None, Some(Bound::inclusive(value))).expect("one bound")
    }

    pub fn lt(attribute: impl Into<String>, value: F) -> Self {
        Self::interval(attribute, None, Some(Bound::exclusive(value))).expect("one bound")
    }

    pub fn gt(attribute: impl Into<String>, value: F) -> Self {
        Self::interval(attribute, Some(Bound::exclusive(value)), None).expect("one bound")
    }

    pub fn ge(attribute: impl Into<String>, value: F) -> Self {
        Self::interval(attribute, Some(Bound::inclusive(value)), None).expect("one bound")
    }

    /// `lo < x <= hi`, the binning convention.
    pub fn range(attribute: impl Into<String>, lo: F, hi: F) -> Result<Self> {
        Self::interval(attribute, Some(Bound::exclusive(lo)), Some(Bound::inclusive(hi)))
    }

    pub fn equals(attribute: impl Into<String>, value: impl Into<Value>) -> Self {
        Condition { attribute: attribute.into(), form: ConditionForm::Equals(value.into()) }
    }

    /// Intersection of two conditions on the same attribute.
    pub fn intersect(&self, other: &Condition<F>) -> Result<Condition<F>> {
        debug_assert_eq!(self.attribute, other.attribute);
        let conflict = || Error::DuplicateCondition(self.attribute.clone());
        match (&self.form, &other.form) {
            (ConditionForm::Equals(a), ConditionForm::Equals(b)) if a == b => Ok(self.clone()),
            (
                ConditionForm::Interval { lower: l1, upper: u1 },
                ConditionForm::Interval { lower: l2, upper: u2 },
            ) => {
                let lower = tighter(*l1, *l2, Ordering::Greater);
                let upper = tighter(*u1, *u2, Ordering::Less);
                Condition::interval(self.attribute.clone(), lower, upper).map_err(|_| conflict())
            }
            _ => Err(conflict()),
        }
    }

    fn matches_number(lower: &Option<Bound<F>>, upper: &Option<Bound<F>>, v: i64) -> bool {
        let x = F::from_cell(v);
        let above = lower.is_none_or(|b| if b.inclusive { x >= b.value } else { x > b.value });
        let below = upper.is_none_or(|b| if b.inclusive { x <= b.value } else { x < b.value });
        above && below
    }
}

/// Picks the more restrictive bound; `prefer` is the ordering of the value
/// that wins (greater for lower bounds, less for upper bounds).
fn tighter<F: Scalar>(a: Option<Bound<F>>, b: Option<Bound<F>>, prefer: Ordering) -> Option<Bound<F>> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => match a.value.partial_cmp(&b.value) {
            Some(o) if o == prefer => Some(a),
            Some(Ordering::Equal) => Some(Bound { value: a.value, inclusive: a.inclusive && b.inclusive }),
            _ => Some(b),
        },
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

impl<F: Scalar> fmt::Display for Condition<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = &self.attribute;
        match &self.form {
            ConditionForm::Equals(v) => write!(f, "{name} = {v}"),
            ConditionForm::Interval { lower: Some(l), upper: None } => {
                write!(f, "{name} {} {}", if l.inclusive { ">=" } else { ">" }, l.value)
            }
            ConditionForm::Interval { lower, upper } => {
                if let Some(l) = lower {
                    write!(f, "{} {} ", l.value, if l.inclusive { "<=" } else { "<" })?;
                }
                f.write_str(name)?;
                if let Some(u) = upper {
                    write!(f, " {} {}", if u.inclusive { "<=" } else { "<" }, u.value)?;
                }
                Ok(())
            }
        }
    }
}

/// JSON shape of a condition: `{attr, op, value}` or, for `in_range`,
/// `{attr, op, values: [lo, hi], bounds: "(]"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionSpec {
    pub attr: String,
    pub op: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<String>,
}

impl<F: Scalar> TryFrom<ConditionSpec> for Condition<F> {
    type Error = Error;

    fn try_from(spec: ConditionSpec) -> Result<Self> {
        let attr = spec.attr;
        let invalid = |reason: String| Error::InvalidCondition { attribute: attr.clone(), reason };
        let scalar = |v: f64| F::from_f64_exact(v).ok_or_else(|| invalid(format!("{v} not representable")));
        let number = || -> Result<F> {
            let v = spec.value.as_ref().and_then(serde_json::Value::as_f64).ok_or_else(|| invalid(format!("`{}` needs a numeric value", spec.op)))?;
            scalar(v)
        };
        match spec.op.as_str() {
            "le" => Ok(Condition::le(attr.clone(), number()?)),
            "lt" => Ok(Condition::lt(attr.clone(), number()?)),
            "gt" => Ok(Condition::gt(attr.clone(), number()?)),
            "ge" => Ok(Condition::ge(attr.clone(), number()?)),
            "eq" => {
                let value = match spec.value {
                    Some(serde_json::Value::String(s)) => Value::Text(s),
                    Some(serde_json::Value::Number(n)) => {
                        Value::Int(n.as_i64().ok_or_else(|| invalid("`eq` needs an integer or text".into()))?)
                    }
                    _ => return Err(invalid("`eq` needs an integer or text value".into())),
                };
                Ok(Condition::equals(attr.clone(), value))
            }
            "in_range" => {
                let [lo, hi] = spec.values.ok_or_else(|| invalid("`in_range` needs `values: [lo, hi]`".into()))?;
                let (lo_inc, hi_inc) = match spec.bounds.as_deref().unwrap_or("(]") {
                    "()" => (false, false),
                    "(]" => (false, true),
                    "[)" => (true, false),
                    "[]" => (true, true),
                    other => return Err(invalid(format!("unknown bounds {other:?}"))),
                };
                Condition::interval(
                    attr.clone(),
                    Some(Bound { value: scalar(lo)?, inclusive: lo_inc }),
                    Some(Bound { value: scalar(hi)?, inclusive: hi_inc }),
                )
            }
            other => Err(invalid(format!("unknown op `{other}`"))),
        }
    }
}

impl<F: Scalar> From<Condition<F>> for ConditionSpec {
    fn from(c: Condition<F>) -> Self {
        let number = |v: F| serde_json::json!(v.to_f64_lossy());
        let mut spec = ConditionSpec { attr: c.attribute, op: String::new(), value: None, values: None, bounds: None };
        match c.form {
            ConditionForm::Equals(v) => {
                spec.op = "eq".into();
                spec.value = Some(match v {
                    Value::Int(i) => serde_json::json!(i),
                    Value::Text(s) => serde_json::json!(s),
                });
            }
            ConditionForm::Interval { lower: None, upper: Some(u) } => {
                spec.op = if u.inclusive { "le" } else { "lt" }.into();
                spec.value = Some(number(u.value));
            }
            ConditionForm::Interval { lower: Some(l), upper: None } => {
                spec.op = if l.inclusive { "ge" } else { "gt" }.into();
                spec.value = Some(number(l.value));
            }
            ConditionForm::Interval { lower: Some(l), upper: Some(u) } => {
                spec.op = "in_range".into();
                spec.values = Some([l.value.to_f64_lossy(), u.value.to_f64_lossy()]);
                spec.bounds = Some(format!("{}{}", if l.inclusive { '[' } else { '(' }, if u.inclusive { ']' } else { ')' }));
            }
            ConditionForm::Interval { lower: None, upper: None } => unreachable!("validated on construction"),
        }
        spec
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Roughset,
    Tree,
    #[default]
    Manual,
}

/// Conjunction of conditions implying a decision label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct Rule<F> {
    pub conditions: Vec<Condition<F>>,
    pub consequent: String,
    #[serde(default)]
    pub provenance: Provenance,
    /// Free-form identifier, used by fixture files.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// Published accuracy in percent, when the rule comes from a reference list.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_accuracy: Option<f64>,
}

impl<F: Scalar> Rule<F> {
    /// Builds a rule, merging repeated conditions on one attribute.
    pub fn new(conditions: Vec<Condition<F>>, consequent: impl Into<String>, provenance: Provenance) -> Result<Self> {
        let mut merged: Vec<Condition<F>> = Vec::with_capacity(conditions.len());
        for c in conditions {
            match merged.iter_mut().find(|m| m.attribute == c.attribute) {
                Some(m) => *m = m.intersect(&c)?,
                None => merged.push(c),
            }
        }
        Ok(Rule { conditions: merged, consequent: consequent.into(), provenance, label: None, expected_accuracy: None })
    }

    /// Rejects lists naming one attribute twice.
    pub fn validate(&self) -> Result<()> {
        for (i, c) in self.conditions.iter().enumerate() {
            if self.conditions[..i].iter().any(|p| p.attribute == c.attribute) {
                return Err(Error::DuplicateCondition(c.attribute.clone()));
            }
        }
        Ok(())
    }

    pub fn parse_list(text: &str) -> Result<Vec<Self>> {
        let rules: Vec<Self> = serde_json::from_str(text)?;
        for r in &rules {
            r.validate()?;
        }
        Ok(rules)
    }

    /// Resolves names and labels against `is`.
    pub fn bind(&self, is: &InformationSystem) -> Result<BoundRule<F>> {
        self.validate()?;
        let mut tests = Vec::with_capacity(self.conditions.len());
        for c in &self.conditions {
            let index = is.attribute_index(&c.attribute).ok_or_else(|| Error::UnknownAttribute(c.attribute.clone()))?;
            let desc = is.attribute(index);
            let invalid = |reason: &str| Error::InvalidCondition { attribute: c.attribute.clone(), reason: reason.into() };
            if let Some(cuts) = &desc.cut_points {
                tests.push((index, bin_test(cuts, desc, &c.form).map_err(|r| invalid(&r))?));
                continue;
            }
            let test = match (&c.form, desc.kind.is_coded()) {
                (ConditionForm::Interval { lower, upper }, false) => Test::Interval(*lower, *upper),
                (ConditionForm::Interval { .. }, true) => return Err(invalid("interval on a categorical attribute")),
                (ConditionForm::Equals(Value::Text(s)), true) => Test::Equals(desc.code_of(s).map(i64::from)),
                (ConditionForm::Equals(Value::Int(v)), false) => Test::Equals(Some(*v)),
                (ConditionForm::Equals(Value::Text(s)), false) => {
                    Test::Equals(Some(s.trim().parse().map_err(|_| invalid("text value on a numeric attribute"))?))
                }
                (ConditionForm::Equals(Value::Int(_)), true) => return Err(invalid("numeric value on a categorical attribute")),
            };
            tests.push((index, test));
        }
        Ok(BoundRule { tests, consequent: is.decision_code(&self.consequent) })
    }
}

impl<F: Scalar> fmt::Display for Rule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conditions.is_empty() {
            f.write_str("TRUE")?;
        }
        for (i, c) in self.conditions.iter().enumerate() {
            if i > 0 {
                f.write_str(" AND ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, " => {}", self.consequent)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Test<F> {
    Interval(Option<Bound<F>>, Option<Bound<F>>),
    /// `None` for a label absent from the dictionary: never matches.
    Equals(Option<i64>),
    /// Bin codes a condition on a binned column accepts.
    Bins(Vec<bool>),
}

/// Resolves a condition on a binned column to the bins it covers. Bin `k` is
/// `(cuts[k-1], cuts[k]]`; an interval that cuts through a bin cannot be
/// decided from bin codes and is rejected.
fn bin_test<F: Scalar>(cuts: &[f64], desc: &AttributeDescriptor, form: &ConditionForm<F>) -> std::result::Result<Test<F>, String> {
    match form {
        ConditionForm::Equals(Value::Text(s)) => {
            let hit = (0..=cuts.len()).find(|&k| desc.bin_label(k as i64).as_deref() == Some(s.as_str()));
            let Some(hit) = hit else { return Err(format!("`{s}` is not a bin of this attribute")) };
            Ok(Test::Bins((0..=cuts.len()).map(|k| k == hit).collect()))
        }
        ConditionForm::Equals(Value::Int(_)) => Err("equality on a binned attribute needs a bin label".into()),
        ConditionForm::Interval { lower, upper } => {
            let lower = lower.map(|b| (b.value.to_f64_lossy(), b.inclusive));
            let upper = upper.map(|b| (b.value.to_f64_lossy(), b.inclusive));
            let mut bins = Vec::with_capacity(cuts.len() + 1);
            for k in 0..=cuts.len() {
                let lo = if k == 0 { f64::NEG_INFINITY } else { cuts[k - 1] };
                let hi = cuts.get(k).copied().unwrap_or(f64::INFINITY);
                let inside = lower.is_none_or(|(v, _)| lo >= v) && upper.is_none_or(|(w, inc)| if inc { hi <= w } else { hi < w });
                let outside = lower.is_some_and(|(v, inc)| if inc { hi < v } else { hi <= v }) || upper.is_some_and(|(w, _)| lo >= w);
                if !inside && !outside {
                    return Err(format!("interval splits bin {}", desc.bin_label(k as i64).unwrap_or_default()));
                }
                bins.push(inside);
            }
            Ok(Test::Bins(bins))
        }
    }
}

/// A rule resolved against one information system.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundRule<F> {
    tests: Vec<(usize, Test<F>)>,
    consequent: Option<u32>,
}

impl<F: Scalar> BoundRule<F> {
    pub fn matches(&self, is: &InformationSystem, row: usize) -> bool {
        self.tests.iter().all(|(a, t)| {
            let v = is.value(*a, row);
            match t {
                Test::Interval(lo, hi) => Condition::matches_number(lo, hi, v),
                Test::Equals(code) => *code == Some(v),
                Test::Bins(bins) => usize::try_from(v).ok().and_then(|k| bins.get(k)).copied().unwrap_or(false),
            }
        })
    }

    /// Decision code, or `None` when the label does not occur in the data.
    pub fn consequent(&self) -> Option<u32> {
        self.consequent
    }

    pub fn evaluate(&self, is: &InformationSystem) -> RuleMetrics {
        let mut support = 0;
        let mut hits = 0;
        for row in 0..is.row_count() {
            if self.matches(is, row) {
                support += 1;
                if Some(is.decision_of(row)) == self.consequent {
                    hits += 1;
                }
            }
        }
        RuleMetrics {
            support,
            hits,
            row_count: is.row_count() as u64,
            consequent_count: self.consequent.map_or(0, |c| is.class_counts()[c as usize]),
        }
    }
}

/// Exact counts behind a rule's confidence and coverage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleMetrics {
    pub support: u64,
    pub hits: u64,
    pub row_count: u64,
    /// Records in the universe carrying the consequent class.
    pub consequent_count: u64,
}

impl RuleMetrics {
    /// `hits / support`; `None` when nothing matches.
    pub fn confidence(&self) -> Option<Ratio<u64>> {
        (self.support > 0).then(|| Ratio::new(self.hits, self.support))
    }

    pub fn coverage(&self) -> Ratio<u64> {
        Ratio::new(self.support, self.row_count)
    }

    pub fn error(&self) -> Option<Ratio<u64>> {
        self.confidence().map(|c| Ratio::from_integer(1) - c)
    }

    /// Confidence over the consequent's base rate.
    pub fn lift(&self) -> Option<Ratio<u128>> {
        (self.support > 0 && self.consequent_count > 0).then(|| {
            Ratio::new(
                u128::from(self.hits) * u128::from(self.row_count),
                u128::from(self.support) * u128::from(self.consequent_count),
            )
        })
    }

    /// Confidence as a percentage cut to two decimals.
    pub fn percent(&self) -> Option<Percent> {
        (self.support > 0).then(|| Percent::truncated(self.hits, self.support))
    }

    pub fn confidence_f64(&self) -> f64 {
        if self.support == 0 {
            0.0
        } else {
            self.hits as f64 / self.support as f64
        }
    }
}

impl Serialize for RuleMetrics {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RuleMetrics", 8)?;
        st.serialize_field("support", &self.support)?;
        st.serialize_field("hits", &self.hits)?;
        st.serialize_field("row_count", &self.row_count)?;
        st.serialize_field("confidence", &self.confidence().map(|_| self.confidence_f64()))?;
        st.serialize_field("confidence_percent", &self.percent().map(|p| p.to_string()))?;
        st.serialize_field("confidence_exact", &self.confidence().map(|c| format!("{}/{}", c.numer(), c.denom())))?;
        st.serialize_field("coverage", &(self.support as f64 / self.row_count as f64))?;
        st.serialize_field("lift", &self.lift().map(|l| *l.numer() as f64 / *l.denom() as f64))?;
        st.end()
    }
}

/// A percentage held in hundredths of a percent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Percent {
    hundredths: u64,
}

impl Percent {
    /// `num/den` as a percentage, cut toward zero at two decimals.
    pub fn truncated(num: u64, den: u64) -> Self {
        assert!(den > 0);
        let scaled = u128::from(num) * 10_000 / u128::from(den);
        Percent { hundredths: scaled as u64 }
    }

    /// `num/den` as a percentage, rounded half-up at two decimals.
    pub fn half_up(num: u64, den: u64) -> Self {
        assert!(den > 0);
        let scaled = (u128::from(num) * 20_000 + u128::from(den)) / (2 * u128::from(den));
        Percent { hundredths: scaled as u64 }
    }

    /// Parses a printed figure such as `97.13` or `89.1`.
    pub fn from_f64(p: f64) -> Self {
        Percent { hundredths: (p * 100.0).round() as u64 }
    }

    pub fn hundredths(self) -> u64 {
        self.hundredths
    }

    pub fn as_f64(self) -> f64 {
        self.hundredths as f64 / 100.0
    }
}

impl fmt::Display for Percent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:02}", self.hundredths / 100, self.hundredths % 100)
    }
}

pub fn evaluate_rule<F: Scalar>(rule: &Rule<F>, is: &InformationSystem) -> Result<RuleMetrics> {
    Ok(rule.bind(is)?.evaluate(is))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "F: Scalar")]
pub struct EvaluatedRule<F> {
    pub rule: Rule<F>,
    pub metrics: RuleMetrics,
}

pub fn evaluate_rules<F: Scalar>(rules: &[Rule<F>], is: &InformationSystem) -> Result<Vec<EvaluatedRule<F>>> {
    rules
        .iter()
        .map(|r| Ok(EvaluatedRule { rule: r.clone(), metrics: evaluate_rule(r, is)? }))
        .collect()
}

/// Keeps rules with `confidence >= min_confidence` and `support >= min_support`.
/// A rule matching nothing counts as confidence 0.
pub fn filter_rules<F>(rules: Vec<EvaluatedRule<F>>, min_confidence: f64, min_support: u64) -> Vec<EvaluatedRule<F>> {
    rules
        .into_iter()
        .filter(|r| {
            let m = &r.metrics;
            // hits/support >= t, compared without dividing
            if m.support == 0 {
                return min_support == 0 && min_confidence <= 0.0;
            }
            m.support >= min_support && m.hits as f64 >= min_confidence * m.support as f64
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankKey {
    Confidence,
    Support,
    Lift,
}

/// Stable descending sort; rules without a defined key sort last.
pub fn rank_rules<F>(rules: &mut [EvaluatedRule<F>], key: RankKey) {
    let ratio = |m: &RuleMetrics| -> Option<Ratio<u128>> {
        match key {
            RankKey::Confidence => m.confidence().map(|c| Ratio::new(u128::from(*c.numer()), u128::from(*c.denom()))),
            RankKey::Support => Some(Ratio::from_integer(u128::from(m.support))),
            RankKey::Lift => m.lift(),
        }
    };
    rules.sort_by_key(|r| std::cmp::Reverse(ratio(&r.metrics)));
}

/// First matching rule wins; `default` when none match.
pub fn predict_with_rules<F: Scalar>(rules: &[BoundRule<F>], is: &InformationSystem, row: usize, default: u32) -> u32 {
    rules
        .iter()
        .find(|r| r.matches(is, row))
        .and_then(BoundRule::consequent)
        .unwrap_or(default)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Agreement {
    Reproduced,
    Unreconciled,
}

/// Computed confidence set against a rule's expected accuracy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub label: Option<String>,
    pub rule: String,
    pub expected: f64,
    pub computed: Option<String>,
    pub computed_half_up: Option<String>,
    /// Computed minus expected, in percentage points.
    pub delta_pp: Option<f64>,
    pub agreement: Agreement,
}

/// Compares every rule carrying an `expected_accuracy`; a rule is reproduced
/// when its unrounded confidence lies within `tolerance_pp` points of the figure.
pub fn compare_expected<F: Scalar>(evaluated: &[EvaluatedRule<F>], tolerance_pp: f64) -> Vec<Comparison> {
    evaluated
        .iter()
        .filter_map(|e| {
            let expected = e.rule.expected_accuracy?;
            let m = &e.metrics;
            let delta = (m.support > 0).then(|| 100.0 * m.hits as f64 / m.support as f64 - expected);
            let agreement = match delta {
                Some(d) if d.abs() <= tolerance_pp + 1e-9 => Agreement::Reproduced,
                _ => Agreement::Unreconciled,
            };
            Some(Comparison {
                label: e.rule.label.clone(),
                rule: e.rule.to_string(),
                expected,
                computed: m.percent().map(|p| p.to_string()),
                computed_half_up: (m.support > 0).then(|| Percent::half_up(m.hits, m.support).to_string()),
                delta_pp: delta,
                agreement,
            })
        })
        .collect()
}
