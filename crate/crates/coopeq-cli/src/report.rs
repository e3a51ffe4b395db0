//! Deterministic report emission: CSV, markdown table, or structured text.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::suite::SuiteRow;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReportError {
    #[error("cannot emit a report from zero rows")]
    EmptyRows,
    #[error("unknown report format `{0}` (expected csv, markdown, or text)")]
    UnknownFormat(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    Csv,
    Markdown,
    #[default]
    Text,
}

impl FromStr for ReportFormat {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "markdown-table" => Ok(ReportFormat::Markdown),
            "text" | "structured-text" => Ok(ReportFormat::Text),
            other => Err(ReportError::UnknownFormat(other.to_string())),
        }
    }
}

fn csv_field(value: &str) -> String {
    if value.contains(',') || value.contains('"') || value.contains('\n') {
        format!("\"{}\"", value.replace('"', "\"\""))
    } else {
        value.to_string()
    }
}

/// Renders the rows in the requested format. Output is byte-stable for fixed
/// input.
pub fn emit_report(rows: &[SuiteRow], format: ReportFormat) -> Result<String, ReportError> {
    if rows.is_empty() {
        return Err(ReportError::EmptyRows);
    }
    let mut out = String::new();
    match format {
        ReportFormat::Csv => {
            out.push_str("label,prediction,observed,source,class\n");
            for row in rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    csv_field(&row.label),
                    csv_field(&row.prediction),
                    csv_field(&row.observed),
                    csv_field(&row.source),
                    row.class.as_str(),
                );
            }
        }
        ReportFormat::Markdown => {
            out.push_str("| label | prediction | observed | source | class |\n");
            out.push_str("| --- | --- | --- | --- | --- |\n");
            for row in rows {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} |",
                    row.label.replace('|', "\\|"),
                    row.prediction.replace('|', "\\|"),
                    row.observed.replace('|', "\\|"),
                    row.source.replace('|', "\\|"),
                    row.class.as_str(),
                );
            }
        }
        ReportFormat::Text => {
            for row in rows {
                let _ = writeln!(out, "row: {}", row.label);
                let _ = writeln!(out, "  prediction: {}", row.prediction);
                let _ = writeln!(out, "  observed:   {}", row.observed);
                let _ = writeln!(out, "  source:     {}", row.source);
                let _ = writeln!(out, "  class:      {}", row.class.as_str());
                if let Some(passed) = row.passed {
                    let _ = writeln!(out, "  assert:     {}", if passed { "pass" } else { "FAIL" });
                }
            }
        }
    }
    Ok(out)
}
