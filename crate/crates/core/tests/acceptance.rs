//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria needing `bank.csv` / `bank-full.csv` look in
//! `$REDUCTMINER_DATA_DIR` (default `data/` at the workspace root) and fail
//! when the files are absent. The process exits non-zero on any failure only
//! when `REDUCTMINER_ACCEPTANCE_STRICT=1`.

mod common;

use std::time::{Duration, Instant};

use reductminer::dtree::{build_tree, gain_ratio_table, SplitKind, TreeNode, TreeParams};
use reductminer::roughset::{
    discernibility_scan, discernibility_scan_with, greedy_reduct_from_core, is_reduct, partition_by, ScanOptions,
};
use reductminer::rules::{compare_expected, evaluate_rules, Agreement};
use reductminer::{BinningSpec, InformationSystem, Percent, ReductMode, Rule};

type Outcome = Result<String, String>;

fn bank() -> Result<InformationSystem, String> {
    let is = common::load_bank("bank.csv")?;
    fingerprint(&is, 4521, [4000, 521])?;
    Ok(is)
}

fn bank_full() -> Result<InformationSystem, String> {
    let is = common::load_bank("bank-full.csv")?;
    fingerprint(&is, 45211, [39922, 5289])?;
    Ok(is)
}

/// Structural pin of the expected file version: shape and class balance.
fn fingerprint(is: &InformationSystem, rows: usize, classes: [u64; 2]) -> Result<(), String> {
    let counts = ["no", "yes"].map(|l| is.decision_code(l).map_or(0, |c| is.class_counts()[c as usize]));
    if is.row_count() != rows || is.attribute_count() != 16 || counts != classes {
        return Err(format!(
            "unexpected file: {} rows, {} attributes, classes {counts:?}",
            is.row_count(),
            is.attribute_count()
        ));
    }
    Ok(())
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    if took > limit {
        return Err(format!("took {took:.2?}, limit {limit:?}"));
    }
    Ok(took)
}

/// Populations and "yes" counts of each rule's antecedent, plus rendered confidences.
fn breakdown(is: &InformationSystem, fixture: &str) -> Result<(Vec<u64>, Vec<u64>, Vec<String>), String> {
    let rules = Rule::parse_list(&common::fixture(fixture)).map_err(|e| e.to_string())?;
    let evaluated = evaluate_rules(&rules, is).map_err(|e| e.to_string())?;
    let support = evaluated.iter().map(|e| e.metrics.support).collect();
    let yes = evaluated
        .iter()
        .map(|e| if e.rule.consequent == "yes" { e.metrics.hits } else { e.metrics.support - e.metrics.hits })
        .collect();
    let shown = evaluated.iter().map(|e| e.metrics.percent().map_or("-".into(), |p| p.to_string())).collect();
    Ok((support, yes, shown))
}

fn check_breakdown(
    is: &InformationSystem,
    fixture: &str,
    support: [u64; 4],
    yes: [u64; 4],
    shown: [&str; 4],
) -> Outcome {
    let (got_support, got_yes, got_shown) = breakdown(is, fixture)?;
    let detail = format!("populations {got_support:?}, yes {got_yes:?}, confidences {got_shown:?}");
    if got_support == support && got_yes == yes && got_shown == shown {
        Ok(detail)
    } else {
        Err(format!("{detail}; expected {support:?}, {yes:?}, {shown:?}"))
    }
}

/// Rendering of the reference counts, independent of the data file.
fn rendered(support: [u64; 4], yes: [u64; 4], consequent_yes: [bool; 4]) -> Vec<String> {
    (0..4)
        .map(|i| {
            let hits = if consequent_yes[i] { yes[i] } else { support[i] - yes[i] };
            Percent::truncated(hits, support[i]).to_string()
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let support = [693, 1855, 1614, 359];
    let yes = [1, 72, 268, 180];
    let expected = ["99.85", "96.11", "83.39", "50.14"];
    let from_counts = rendered(support, yes, [false, false, false, true]);
    let note = format!("reference counts render as {from_counts:?}");
    let is = bank().map_err(|e| format!("{e}; {note}"))?;
    let start = Instant::now();
    let bins: Vec<BinningSpec> = BinningSpec::parse_map(&common::fixture("duration_bins.json")).map_err(|e| e.to_string())?;
    let binned = is.apply_binning(&bins).map_err(|e| e.to_string())?;
    let duration = binned.attribute_set(&["duration"]).map_err(|e| e.to_string())?;
    let blocks: Vec<usize> = partition_by(&binned, duration).map_err(|e| e.to_string())?.blocks().iter().map(Vec::len).collect();
    let detail = check_breakdown(&is, "duration_rules.json", support, yes, expected).map_err(|e| format!("{e}; {note}"))?;
    within(Duration::from_secs(1), start)?;
    Ok(format!("{detail}; bins {blocks:?}"))
}

fn criterion_2() -> Outcome {
    let support = [3705, 490, 197, 129];
    let yes = [337, 63, 38, 83];
    let expected = ["90.90", "87.14", "80.71", "64.34"];
    let note = format!("reference counts render as {:?}", rendered(support, yes, [false, false, false, true]));
    let is = bank().map_err(|e| format!("{e}; {note}"))?;
    let start = Instant::now();
    let detail = check_breakdown(&is, "poutcome_rules.json", support, yes, expected)?;
    within(Duration::from_secs(1), start)?;
    Ok(detail)
}

fn criterion_3() -> Outcome {
    let is = bank().map_err(|e| format!("{e}; 2475/2548 renders as {}", Percent::truncated(2475, 2548)))?;
    let rules = Rule::parse_list(&common::fixture("tree_rules.json")).map_err(|e| e.to_string())?;
    let m = evaluate_rules(&rules[..1], &is).map_err(|e| e.to_string())?[0].metrics;
    let shown = m.percent().map(|p| p.to_string()).unwrap_or_default();
    let detail = format!("support {}, hits {}, confidence {shown}", m.support, m.hits);
    if (m.support, m.hits, shown.as_str()) == (2548, 2475, "97.13") {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_4() -> Outcome {
    let is = bank()?;
    let start = Instant::now();
    let table = gain_ratio_table::<f64>(&is);
    let took = within(Duration::from_secs(30), start)?;
    let day = table.iter().find(|e| e.attribute == "day").ok_or("no day attribute")?;
    let top = &table[0];
    let detail = format!(
        "top {} {:.8}, day {:.8}, order [{}] in {took:.2?}",
        top.attribute,
        top.gain_ratio,
        day.gain_ratio,
        table.iter().map(|e| e.attribute.as_str()).collect::<Vec<_>>().join(", ")
    );
    if top.attribute == "duration" && (top.gain_ratio - 0.10811967).abs() <= 0.02 && day.gain_ratio.abs() <= 0.001 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_5() -> Outcome {
    let is = bank()?;
    let tree: TreeNode<f64> = build_tree(&is, &TreeParams::default());
    match &tree {
        TreeNode::Split { split, .. } if split.kind == SplitKind::Threshold => {
            let t = split.threshold.unwrap_or(f64::NAN);
            let detail = format!("root {} <= {t}, {} leaves", split.attribute_name, tree.leaf_count());
            if split.attribute_name == "duration" && (210.0..=213.0).contains(&t) {
                Ok(detail)
            } else {
                Err(detail)
            }
        }
        TreeNode::Split { split, .. } => Err(format!("root splits on categorical {}", split.attribute_name)),
        TreeNode::Leaf { .. } => Err("tree is a single leaf".into()),
    }
}

fn criterion_6() -> Outcome {
    let is = bank()?;
    let start = Instant::now();
    let all = is.all_attributes();
    let summary = discernibility_scan(&is, all, ReductMode::Absolute).map_err(|e| e.to_string())?;
    let greedy = greedy_reduct_from_core(&is, ReductMode::Absolute, summary.core).map_err(|e| e.to_string())?;
    let claimed = is.attribute_set(&["age", "balance", "duration"]).map_err(|e| e.to_string())?;
    let verdict = is_reduct(&is, claimed, all).map_err(|e| e.to_string())?;
    let took = within(Duration::from_secs(300), start)?;
    let snapshot = serde_json::json!({
        "candidate": ["age", "balance", "duration"],
        "verdict": verdict,
        "core": is.attribute_names(summary.core),
        "greedy_reduct": is.attribute_names(greedy),
        "pair_count": summary.pair_count,
    });
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    std::fs::write(dir.join("reduct_verdict.json"), snapshot.to_string()).map_err(|e| e.to_string())?;
    Ok(format!("{{age, balance, duration}} is {verdict:?}; core {:?}; greedy {:?}; {took:.2?}", snapshot["core"], snapshot["greedy_reduct"]))
}

fn criterion_7() -> Outcome {
    common::checks::reduct_oracle(2024, 50).map(|()| "50 tables agree with enumeration".into())
}

fn criterion_8() -> Outcome {
    common::checks::sandwich_and_refinement(2025, 200).map(|()| "200 triples, no violations".into())
}

fn criterion_9() -> Outcome {
    common::checks::entropy_numerics(2026, 100).map(|()| "100 vectors within 1e-9".into())
}

fn criterion_10() -> Outcome {
    let rules: Vec<Rule> = ["reduct_rules.json", "tree_rules.json"]
        .iter()
        .map(|f| Rule::parse_list(&common::fixture(f)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?
        .concat();
    let small = bank()?;
    let full = bank_full()?;
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut headline = false;
    for (name, is) in [("bank.csv", &small), ("bank-full.csv", &full)] {
        let evaluated = evaluate_rules(&rules, is).map_err(|e| e.to_string())?;
        for c in compare_expected(&evaluated, 0.5) {
            let label = c.label.unwrap_or_default();
            let computed = c.computed.unwrap_or_else(|| "-".into());
            if name == "bank.csv" && label == "short-call" && computed == "97.13" {
                headline = true;
            }
            lines.push(format!("    {name:<13} {label:<46} expected {:>6} computed {computed:>6} {:?}", c.expected, c.agreement));
        }
    }
    let took = within(Duration::from_secs(10), start)?;
    let reproduced = lines.iter().filter(|l| l.ends_with(&format!("{:?}", Agreement::Reproduced))).count();
    let detail = format!("{reproduced}/{} comparisons reproduced in {took:.2?}\n{}", lines.len(), lines.join("\n"));
    if headline {
        Ok(detail)
    } else {
        Err(format!("duration <= 211 did not give 97.13 on bank.csv; {detail}"))
    }
}

fn criterion_11() -> Outcome {
    let small = bank()?;
    let full = bank_full()?;
    let all = small.all_attributes();
    let sequential = discernibility_scan_with(&small, all, ReductMode::Absolute, ScanOptions::sequential()).map_err(|e| e.to_string())?;
    let parallel = discernibility_scan_with(&small, all, ReductMode::Absolute, ScanOptions::default()).map_err(|e| e.to_string())?;
    if parallel != sequential {
        return Err("parallel and sequential scans differ on bank.csv".into());
    }
    let start = Instant::now();
    let summary = discernibility_scan(&full, full.all_attributes(), ReductMode::Absolute).map_err(|e| e.to_string())?;
    let took = within(Duration::from_secs(600), start)?;
    Ok(format!("{} pairs in {took:.2?}; core {:?}", summary.pair_count, full.attribute_names(summary.core)))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("duration breakdown on bank.csv", criterion_1),
        ("poutcome breakdown on bank.csv", criterion_2),
        ("duration <= 211 => no at 97.13", criterion_3),
        ("gain ratio ranking", criterion_4),
        ("root split on duration", criterion_5),
        ("reduct verdict for {age, balance, duration}", criterion_6),
        ("greedy reduct and core vs enumeration", criterion_7),
        ("approximation sandwich and refinement", criterion_8),
        ("entropy numerics", criterion_9),
        ("rule accuracies on both datasets", criterion_10),
        ("scan performance and bit-identity", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS [{:>2}] {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{:>2}] {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 && std::env::var("REDUCTMINER_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
        std::process::exit(1);
    }
}
