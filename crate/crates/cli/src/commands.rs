use std::path::Path;
use std::time::Instant;

use reductminer::dataset::{load_csv, DatasetSummary};
use reductminer::dtree::{build_tree, gain_ratio_table, GainRatioEntry};
use reductminer::roughset::{
    discernibility_scan, greedy_reduct_from_core, is_reduct_in, partition_by, rules_from_partition, SummaryReport,
};
use reductminer::rules::{compare_expected, evaluate_rules, filter_rules, predict_with_rules, rank_rules};
use reductminer::{
    BinningSpec, Comparison, EvaluatedRule, InformationSystem, ReductVerdict, Rule, RuleMetrics, Schema, TreeNode,
    TreeParams,
};
use serde::Serialize;

use crate::config::{read_text, RunConfig};
use crate::error::CliError;
use crate::report::{align, comparison_table, emit, metrics_cells, rule_table, Report, TextReport};

fn load(config: &RunConfig, path: &Path) -> Result<InformationSystem, CliError> {
    let schema: Option<Schema> = match &config.schema {
        Some(p) => Some(serde_json::from_str(&read_text(p)?).map_err(|e| CliError::usage(format!("{}: {e}", p.display())))?),
        None => None,
    };
    let is = load_csv(path, schema.as_ref(), config.delimiter_byte())?;
    match &config.bins {
        Some(p) => Ok(is.apply_binning(&BinningSpec::parse_map(&read_text(p)?)?)?),
        None => Ok(is),
    }
}

fn input(config: &RunConfig) -> Result<InformationSystem, CliError> {
    load(config, config.input.as_deref().expect("validated"))
}

fn finish<T: Serialize + TextReport>(command: &'static str, config: &RunConfig, start: Instant, result: T) -> Result<(), CliError> {
    let elapsed = start.elapsed();
    let report = Report {
        command,
        version: env!("CARGO_PKG_VERSION"),
        config_digest: config.digest()?,
        config,
        result,
        wall_time_ms: config.timings.then_some(elapsed.as_millis() as u64),
    };
    emit(&report)
}

impl TextReport for DatasetSummary {
    fn text(&self) -> String {
        self.to_string()
    }
}

pub fn describe(config: &RunConfig) -> Result<(), CliError> {
    let start = Instant::now();
    let is = input(config)?;
    finish("describe", config, start, is.describe())
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub attributes: Vec<String>,
    pub verdict: ReductVerdict,
}

#[derive(Debug, Serialize)]
pub struct ReduceReport {
    pub rows: usize,
    pub scan: SummaryReport,
    pub core: Vec<String>,
    pub reduct: Vec<String>,
    /// `None` when the full attribute set discerns nothing and the reduct is empty.
    pub reduct_verdict: Option<ReductVerdict>,
    pub checks: Vec<Check>,
}

impl TextReport for ReduceReport {
    fn text(&self) -> String {
        let mut s = format!(
            "mode: {}\nrows: {}  pairs: {}  non-empty entries: {}  singleton entries: {}\n",
            self.scan.mode, self.rows, self.scan.pair_count, self.scan.nonempty_entry_count, self.scan.singleton_pair_count
        );
        s += &format!("core: {{{}}}\nreduct: {{{}}}", self.core.join(", "), self.reduct.join(", "));
        match self.reduct_verdict {
            Some(v) => s += &format!(" ({v:?})\n"),
            None => s += "\n",
        }
        for c in &self.checks {
            s += &format!("check {{{}}}: {:?}\n", c.attributes.join(", "), c.verdict);
        }
        s += "\nentries per attribute\n";
        let rows: Vec<[String; 2]> = self.scan.entry_histogram.iter().map(|(a, n)| [n.to_string(), a.clone()]).collect();
        s + &align(&rows)
    }
}

pub fn reduce(config: &RunConfig) -> Result<(), CliError> {
    let start = Instant::now();
    let is = input(config)?;
    let all = is.all_attributes();
    let summary = discernibility_scan(&is, all, config.mode)?;
    let reduct = greedy_reduct_from_core(&is, config.mode, summary.core)?;
    let reduct_verdict = if reduct.is_empty() { None } else { Some(is_reduct_in(&is, reduct, all, config.mode)?) };
    let mut checks = Vec::new();
    for names in &config.check {
        let set = is.attribute_set(names)?;
        checks.push(Check { attributes: is.attribute_names(set), verdict: is_reduct_in(&is, set, all, config.mode)? });
    }
    eprintln!("reduce: {} pairs scanned in {:.2?}", summary.pair_count, start.elapsed());
    let report = ReduceReport {
        rows: is.row_count(),
        scan: summary.report(&is),
        core: is.attribute_names(summary.core),
        reduct: is.attribute_names(reduct),
        reduct_verdict,
        checks,
    };
    finish("reduce", config, start, report)
}

fn select(config: &RunConfig, rules: Vec<EvaluatedRule>) -> Vec<EvaluatedRule> {
    let mut rules = if config.min_confidence.is_some() || config.min_support.is_some() {
        filter_rules(rules, config.min_confidence.unwrap_or(0.0), config.min_support.unwrap_or(0))
    } else {
        rules
    };
    if let Some(key) = config.rank {
        rank_rules(&mut rules, key);
    }
    rules
}

#[derive(Debug, Serialize)]
pub struct TreeReport {
    pub params: TreeParams,
    pub gain_ratios: Vec<GainRatioEntry<f64>>,
    pub leaves: usize,
    pub size: usize,
    pub depth: usize,
    pub training_accuracy: f64,
    pub tree: TreeNode,
    pub rules: Vec<EvaluatedRule>,
}

impl TextReport for TreeReport {
    fn text(&self) -> String {
        let p = &self.params;
        let mut s = format!("params: min_leaf={} max_depth={} min_gain={}\n\n", p.min_leaf, p.max_depth, p.min_gain);
        s += "gain ratio (descending)\n";
        let rows: Vec<[String; 3]> = self
            .gain_ratios
            .iter()
            .map(|e| [format!("{:.8}", e.gain_ratio), e.threshold.map_or_else(String::new, |t| format!("<= {t}")), e.attribute.clone()])
            .collect();
        s += &align(&rows);
        s += &format!(
            "\nleaves: {}  size: {}  depth: {}  training accuracy: {:.4}\n\n",
            self.leaves, self.size, self.depth, self.training_accuracy
        );
        s += &self.tree.render();
        s += &format!("\nrules ({})\n", self.rules.len());
        s + &rule_table(&self.rules)
    }
}

pub fn tree(config: &RunConfig) -> Result<(), CliError> {
    let start = Instant::now();
    let is = input(config)?;
    let gain_ratios = gain_ratio_table::<f64>(&is);
    let tree: TreeNode = build_tree(&is, &config.tree);
    let correct = (0..is.row_count()).filter(|&r| tree.classify(&is, r).0 == is.decision_of(r)).count();
    let rules = select(config, evaluate_rules(&tree.to_rules(), &is)?);
    let report = TreeReport {
        params: config.tree,
        gain_ratios,
        leaves: tree.leaf_count(),
        size: tree.size(),
        depth: tree.depth(),
        training_accuracy: correct as f64 / is.row_count() as f64,
        tree,
        rules,
    };
    finish("tree", config, start, report)
}

fn obtain_rules(config: &RunConfig, is: &InformationSystem) -> Result<(String, Vec<Rule>), CliError> {
    if let Some(path) = &config.rules {
        return Ok((path.display().to_string(), Rule::parse_list(&read_text(path)?)?));
    }
    match config.generate.as_deref() {
        Some("tree") => Ok(("tree".into(), build_tree::<f64>(is, &config.tree).to_rules())),
        Some("reduct") => {
            let all = is.all_attributes();
            let core = discernibility_scan(is, all, config.mode)?.core;
            let reduct = greedy_reduct_from_core(is, config.mode, core)?;
            if reduct.is_empty() {
                return Ok(("reduct".into(), vec![Rule::new(vec![], is.decision_label(is.majority_class(is.class_counts())), Default::default())?]));
            }
            let partition = partition_by(is, reduct)?;
            Ok((format!("reduct {{{}}}", is.attribute_names(reduct).join(", ")), rules_from_partition(is, &partition)?))
        }
        Some(other) => Err(CliError::usage(format!("unknown rule generator `{other}`"))),
        None => Err(CliError::usage("rules needs --rules <file> or --generate {tree|reduct}")),
    }
}

#[derive(Debug, Serialize)]
pub struct RulesReport {
    pub source: String,
    pub rows: usize,
    pub rules: Vec<EvaluatedRule>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparisons: Option<Vec<Comparison>>,
}

impl TextReport for RulesReport {
    fn text(&self) -> String {
        let mut s = format!("source: {}\nrows: {}  rules: {}\n\n", self.source, self.rows, self.rules.len());
        s += &rule_table(&self.rules);
        if let Some(c) = &self.comparisons {
            s += "\n";
            s += &comparison_table("expected vs computed", c);
        }
        s
    }
}

pub fn rules(config: &RunConfig) -> Result<(), CliError> {
    let start = Instant::now();
    let is = input(config)?;
    let (source, rules) = obtain_rules(config, &is)?;
    let evaluated = select(config, evaluate_rules(&rules, &is)?);
    let comparisons = config.compare.then(|| compare_expected(&evaluated, config.tolerance));
    finish("rules", config, start, RulesReport { source, rows: is.row_count(), rules: evaluated, comparisons })
}

#[derive(Debug, Serialize)]
pub struct RuleDelta {
    pub rule: Rule,
    pub train: RuleMetrics,
    pub test: RuleMetrics,
    /// Test confidence minus training confidence, in percentage points.
    pub delta_pp: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct Prediction {
    pub records: usize,
    pub correct: usize,
    pub accuracy: f64,
    /// Records no rule matched, classified with the default class.
    pub defaulted: usize,
    pub default_class: String,
}

#[derive(Debug, Serialize)]
pub struct EvalReport {
    pub source: String,
    pub train_rows: usize,
    pub test_rows: usize,
    pub rules: Vec<RuleDelta>,
    pub prediction: Prediction,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparisons_train: Option<Vec<Comparison>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparisons_test: Option<Vec<Comparison>>,
}

impl TextReport for EvalReport {
    fn text(&self) -> String {
        let mut s = format!("source: {}\ntrain rows: {}  test rows: {}\n\n", self.source, self.train_rows, self.test_rows);
        let mut rows = vec![[
            "train".to_string(),
            "support".into(),
            "test".into(),
            "support".into(),
            "delta".into(),
            "rule".into(),
        ]];
        for d in &self.rules {
            let [ts, _, tc, _] = metrics_cells(&d.train);
            let [vs, _, vc, _] = metrics_cells(&d.test);
            let name = d.rule.label.as_ref().map_or_else(|| d.rule.to_string(), |l| format!("[{l}] {}", d.rule));
            rows.push([tc, ts, vc, vs, d.delta_pp.map_or_else(|| "-".into(), |x| format!("{x:+.2}")), name]);
        }
        s += &align(&rows);
        let p = &self.prediction;
        s += &format!(
            "\nprediction: {}/{} correct ({:.4}), {} defaulted to {}\n",
            p.correct, p.records, p.accuracy, p.defaulted, p.default_class
        );
        if let Some(c) = &self.comparisons_train {
            s += "\n";
            s += &comparison_table("expected vs computed (train)", c);
        }
        if let Some(c) = &self.comparisons_test {
            s += "\n";
            s += &comparison_table("expected vs computed (test)", c);
        }
        s
    }
}

fn pct(m: &RuleMetrics) -> Option<f64> {
    (m.support > 0).then(|| 100.0 * m.hits as f64 / m.support as f64)
}

pub fn eval(config: &RunConfig) -> Result<(), CliError> {
    let start = Instant::now();
    let train = input(config)?;
    let test_path = config.test.as_deref().ok_or_else(|| CliError::usage("eval needs --test <file>"))?;
    let test = load(config, test_path)?;
    train.check_compatible(&test).map_err(|e| CliError::usage(format!("{e}: {} vs {}", config.input.as_ref().unwrap().display(), test_path.display())))?;

    let default_class = train.decision_label(train.majority_class(train.class_counts())).to_string();
    let (source, rules, tree) = match &config.rules {
        Some(path) => (path.display().to_string(), Rule::parse_list(&read_text(path)?)?, None),
        None => {
            let tree: TreeNode = build_tree(&train, &config.tree);
            ("tree".to_string(), tree.to_rules(), Some(tree))
        }
    };
    let on_train = evaluate_rules(&rules, &train)?;
    let on_test = evaluate_rules(&rules, &test)?;

    let truth = |r: usize| test.decision_label(test.decision_of(r));
    let (correct, defaulted) = match &tree {
        Some(tree) => {
            let hits = (0..test.row_count()).filter(|&r| train.decision_label(tree.classify(&test, r).0) == truth(r)).count();
            (hits, 0)
        }
        None => {
            let bound: Vec<_> = rules.iter().map(|r| r.bind(&test)).collect::<Result<_, _>>()?;
            let unmatched = u32::MAX;
            let mut correct = 0;
            let mut defaulted = 0;
            for r in 0..test.row_count() {
                let label = match predict_with_rules(&bound, &test, r, unmatched) {
                    c if c == unmatched => {
                        defaulted += 1;
                        default_class.as_str()
                    }
                    c => test.decision_label(c),
                };
                correct += usize::from(label == truth(r));
            }
            (correct, defaulted)
        }
    };
    let prediction = Prediction {
        records: test.row_count(),
        correct,
        accuracy: correct as f64 / test.row_count() as f64,
        defaulted,
        default_class,
    };
    let (comparisons_train, comparisons_test) = if config.compare {
        (Some(compare_expected(&on_train, config.tolerance)), Some(compare_expected(&on_test, config.tolerance)))
    } else {
        (None, None)
    };
    let rules = on_train
        .into_iter()
        .zip(on_test)
        .map(|(a, b)| RuleDelta {
            delta_pp: pct(&a.metrics).zip(pct(&b.metrics)).map(|(x, y)| y - x),
            rule: a.rule,
            train: a.metrics,
            test: b.metrics,
        })
        .collect();
    let report = EvalReport {
        source,
        train_rows: train.row_count(),
        test_rows: test.row_count(),
        rules,
        prediction,
        comparisons_train,
        comparisons_test,
    };
    finish("eval", config, start, report)
}

