use std::fmt::Write as _;
use std::path::Path;

use reductminer::{Comparison, EvaluatedRule, RuleMetrics};
use serde::Serialize;

use crate::cli::Format;
use crate::config::RunConfig;
use crate::error::CliError;

/// Envelope shared by every command's report.
#[derive(Debug, Serialize)]
pub struct Report<'a, T> {
    pub command: &'static str,
    pub version: &'static str,
    pub config_digest: String,
    pub config: &'a RunConfig,
    pub result: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

pub trait TextReport {
    fn text(&self) -> String;
}

pub fn emit<T: Serialize + TextReport>(report: &Report<'_, T>) -> Result<(), CliError> {
    let body = match report.config.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| CliError::compute(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = format!("{} (reductminer {})\nconfig digest: {}\n", report.command, report.version, report.config_digest);
            if let Some(ms) = report.wall_time_ms {
                writeln!(s, "wall time: {ms} ms").unwrap();
            }
            s.push('\n');
            s + &report.result.text()
        }
    };
    match &report.config.out {
        Some(dir) => {
            let ext = if report.config.format == Format::Json { "json" } else { "txt" };
            let path = dir.join(format!("{}.{ext}", report.command));
            write(&path, &body)
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn write(path: &Path, body: &str) -> Result<(), CliError> {
    std::fs::write(path, body).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

pub fn metrics_cells(m: &RuleMetrics) -> [String; 4] {
    let pct = m.percent().map_or_else(|| "-".into(), |p| format!("{p}%"));
    let coverage = format!("{:.4}", m.support as f64 / m.row_count.max(1) as f64);
    [m.support.to_string(), m.hits.to_string(), pct, coverage]
}

/// Aligned columns: support, hits, confidence, coverage, rule.
pub fn rule_table(rules: &[EvaluatedRule]) -> String {
    let mut rows = vec![["support".to_string(), "hits".into(), "confidence".into(), "coverage".into(), "rule".into()]];
    for e in rules {
        let [s, h, c, v] = metrics_cells(&e.metrics);
        let name = e.rule.label.as_ref().map_or_else(|| e.rule.to_string(), |l| format!("[{l}] {}", e.rule));
        rows.push([s, h, c, v, name]);
    }
    align(&rows)
}

pub fn comparison_table(title: &str, comparisons: &[Comparison]) -> String {
    let mut rows = vec![[
        "expected".to_string(),
        "computed".into(),
        "half-up".into(),
        "delta".into(),
        "agreement".into(),
        "rule".into(),
    ]];
    for c in comparisons {
        rows.push([
            format!("{:.2}", c.expected),
            c.computed.clone().unwrap_or_else(|| "-".into()),
            c.computed_half_up.clone().unwrap_or_else(|| "-".into()),
            c.delta_pp.map_or_else(|| "-".into(), |d| format!("{d:+.2}")),
            format!("{:?}", c.agreement).to_lowercase(),
            c.label.clone().unwrap_or_else(|| c.rule.clone()),
        ]);
    }
    format!("{title}\n{}", align(&rows))
}

/// Right-aligns every column but the last.
pub fn align<const N: usize>(rows: &[[String; N]]) -> String {
    let mut widths = [0usize; N];
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            if i + 1 == N {
                out += cell;
            } else {
                write!(out, "{cell:>w$}  ", w = widths[i]).unwrap();
            }
        }
        out.push('\n');
    }
    out
}
