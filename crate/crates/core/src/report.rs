//! Per-run extraction summary and its JSON and table renderings.

use std::fmt::Write as _;

use serde::Serialize;

use crate::heuristics::Threshold;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub mode: &'static str,
    pub value: f64,
}

impl From<Threshold> for ThresholdReport {
    fn from(t: Threshold) -> Self {
        ThresholdReport {
            mode: t.mode_name(),
            value: t.value(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtractionReport {
    pub dataset: String,
    pub documents: usize,
    /// Lines of the expanded pretty print of every input document.
    pub doc_loc: usize,
    pub s_loc: usize,
    pub t_loc: usize,
    pub composite_loc: usize,
    /// `t_loc / composite_loc`.
    pub ratio_t: f64,
    /// Depth-resolved dependencies over all attributes, no threshold.
    pub cfds_without_heuristics: usize,
    /// The same, restricted to those meeting the threshold.
    pub cfds_with_threshold: usize,
    /// Tagged-union cases left after threshold, attribute heuristics and
    /// the union rule.
    pub cfds_with_threshold_and_heuristics: usize,
    /// `None` when validation was not requested.
    pub valid: Option<bool>,
    pub threshold: ThresholdReport,
    pub max_depth: usize,
    pub encoding: &'static str,
    pub seconds: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Json,
    Table,
}

/// One JSON object for a single report, an array for several. The table
/// has one row per report.
pub fn emit_report(reports: &[ExtractionReport], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let text = match reports {
                [one] => serde_json::to_string_pretty(one),
                many => serde_json::to_string_pretty(many),
            };
            text.expect("reports serialize") + "\n"
        }
        ReportFormat::Table => table(reports),
    }
}

fn threshold_text(t: &ThresholdReport) -> String {
    match t.mode {
        "relative" => format!("{}%", t.value * 100.0),
        _ => format!("{}", t.value),
    }
}

fn table(reports: &[ExtractionReport]) -> String {
    let header = [
        "Dataset",
        "|D|",
        "|S|",
        "|T|",
        "RatioT",
        "pi_min",
        "CFDs",
        "w/ pi_min",
        "w/ heuristics",
        "Valid",
    ];
    let rows: Vec<[String; 10]> = reports
        .iter()
        .map(|r| {
            [
                r.dataset.clone(),
                r.doc_loc.to_string(),
                r.s_loc.to_string(),
                r.t_loc.to_string(),
                format!("{:.1}%", r.ratio_t * 100.0),
                threshold_text(&r.threshold),
                r.cfds_without_heuristics.to_string(),
                r.cfds_with_threshold.to_string(),
                r.cfds_with_threshold_and_heuristics.to_string(),
                match r.valid {
                    Some(true) => "yes".into(),
                    Some(false) => "no".into(),
                    None => "-".into(),
                },
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells
            .zip(&widths)
            .enumerate()
            .map(|(i, (c, w))| {
                if i == 0 {
                    format!("{c:<w$}")
                } else {
                    format!("{c:>w$}")
                }
            })
            .collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&mut header.iter().copied());
    for row in &rows {
        line(&mut row.iter().map(String::as_str));
    }
    out
}
