use std::fmt::Write;
use std::str::FromStr;

use crate::error::{domain, Error, Result};

use super::sweep::SweepReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "text" => Ok(ReportFormat::Text),
            other => domain(format!(
                "unknown report format {other:?} (expected json, csv or text)"
            )),
        }
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:?}")).unwrap_or_default()
}

/// Renders a report. JSON is the full canonical form (pretty-printed, stable
/// key order); CSV and text list one row per theorem/variant aggregate.
pub fn summarize_report(r: &SweepReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
            s.push('\n');
            s
        }
        ReportFormat::Csv => {
            let mut s = String::from(
                "theorem,variant,checked,held,violated,not_applicable,min_slack,mean_slack\n",
            );
            for a in &r.aggregates {
                writeln!(
                    s,
                    "{},{},{},{},{},{},{},{}",
                    a.theorem,
                    a.variant,
                    a.checked,
                    a.held,
                    a.violated,
                    a.not_applicable,
                    opt(a.min_slack),
                    opt(a.mean_slack)
                )
                .unwrap();
            }
            s
        }
        ReportFormat::Text => {
            let mut s = String::new();
            writeln!(
                s,
                "{} graphs ({} skipped), {} alphas, {} violation exemplars",
                r.corpus.len(),
                r.skipped.len(),
                r.config.alpha_grid.len(),
                r.exemplars.len()
            )
            .unwrap();
            writeln!(
                s,
                "{:<24} {:<9} {:>8} {:>8} {:>8} {:>8} {:>12} {:>12}",
                "theorem",
                "variant",
                "checked",
                "held",
                "violated",
                "n/a",
                "min_slack",
                "mean_slack"
            )
            .unwrap();
            let sci = |x: Option<f64>| x.map_or_else(|| "-".to_string(), |v| format!("{v:.4e}"));
            for a in &r.aggregates {
                writeln!(
                    s,
                    "{:<24} {:<9} {:>8} {:>8} {:>8} {:>8} {:>12} {:>12}",
                    a.theorem.name(),
                    a.variant.name(),
                    a.checked,
                    a.held,
                    a.violated,
                    a.not_applicable,
                    sci(a.min_slack),
                    sci(a.mean_slack)
                )
                .unwrap();
            }
            s
        }
    }
}
