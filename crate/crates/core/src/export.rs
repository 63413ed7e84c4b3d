//! CSV and JSON output formats.
//!
//! All writers are deterministic: the same inputs produce byte-identical
//! output, which the CLI relies on for its idempotence guarantee.

use crate::gain::ConvergenceReport;
use crate::graph::{csv_escape, Graph};
use crate::rank::{CorrelationTable, SweepResult};
use crate::score::ScoreVector;

/// Scores as "original_label,score", sorted by descending score with ties
/// broken by label.
pub fn scores_csv(g: &Graph, scores: &ScoreVector) -> String {
    let mut rows: Vec<(&str, f64)> = scores
        .values
        .iter()
        .enumerate()
        .map(|(i, &v)| (g.label(i), v))
        .collect();
    rows.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let mut out = String::from("original_label,score\n");
    for (label, value) in rows {
        out.push_str(&csv_escape(label));
        out.push(',');
        out.push_str(&format_float(value));
        out.push('\n');
    }
    out
}

/// Convergence data as "k,increment_norm,epsilon_k"; epsilon is empty for
/// score runs that carry no ε curve.
pub fn convergence_csv(report: &ConvergenceReport) -> String {
    let mut out = String::from("k,increment_norm,epsilon_k\n");
    for step in &report.steps {
        out.push_str(&step.k.to_string());
        out.push(',');
        out.push_str(&format_float(step.increment_norm));
        out.push(',');
        if let Some(eps) = step.epsilon {
            out.push_str(&format_float(eps));
        }
        out.push('\n');
    }
    out
}

/// Sweep rows as "delta,metric,rho"; undefined correlations print as "nan".
pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = String::from("delta,metric,rho\n");
    for (di, &delta) in result.delta_grid.iter().enumerate() {
        for (mi, metric) in result.metrics.iter().enumerate() {
            out.push_str(&format_float(delta));
            out.push(',');
            out.push_str(metric.name());
            out.push(',');
            match result.rho[di][mi] {
                Some(rho) => out.push_str(&format_float(rho)),
                None => out.push_str("nan"),
            }
            out.push('\n');
        }
    }
    out
}

/// Heatmap-ready matrix with metric names as header row and column.
pub fn correlation_csv(table: &CorrelationTable) -> String {
    let mut out = String::from("metric");
    for name in &table.metrics {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for (i, name) in table.metrics.iter().enumerate() {
        out.push_str(name);
        for j in 0..table.metrics.len() {
            out.push(',');
            match table.rho[i][j] {
                Some(rho) => out.push_str(&format_float(rho)),
                None => out.push_str("nan"),
            }
        }
        out.push('\n');
    }
    out
}

/// Shortest-roundtrip float formatting; parsing the text recovers the bits.
fn format_float(v: f64) -> String {
    let mut s = format!("{v}");
    if !s.contains('.') && !s.contains('e') && !s.contains("inf") && !s.contains("NaN") {
        s.push_str(".0");
    }
    s
}
