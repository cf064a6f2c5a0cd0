//! Run reports: config echo, per-check certificates and summary tallies,
//! serialized as JSON, CSV projections or human-readable text.

use serde::Serialize;
use serde_json::{json, Value};

use genzgamma_core::fmt_f64;

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
}

/// Self-describing record of one command run. The summary counts always
/// equal the check-list tallies. Wall-clock time is kept out of the JSON
/// body so that identical configs produce byte-identical reports; the
/// text rendering prints it.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub version: &'static str,
    pub config: Value,
    pub summary: Summary,
    pub checks: Value,
    #[serde(skip)]
    pub wall_clock_secs: f64,
    #[serde(skip)]
    pub text_lines: Vec<String>,
    #[serde(skip)]
    pub csv: String,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("genzgamma {} v{}\n", self.command, self.version));
        for line in &self.text_lines {
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(&format!(
            "summary: {} passed, {} failed, {} inconclusive ({} s wall clock)\n",
            self.summary.passed,
            self.summary.failed,
            self.summary.inconclusive,
            self.wall_clock_secs
        ));
        out
    }
}

/// Format an optional value for CSV cells; empty when absent.
pub fn csv_opt_f64(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

pub fn csv_opt_u32(v: Option<u32>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Config echo fragment for the series budget.
pub fn budget_json(budget: genzgamma_core::SeriesBudget) -> Value {
    json!({ "tail_tol": budget.tail_tol, "max_terms": budget.max_terms })
}
