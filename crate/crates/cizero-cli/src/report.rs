//! Report structures and their renderings.
//!
//! Reports serialize to JSON and re-parse to an equal structure; given
//! the same inputs and seeds the JSON bytes are identical across runs, so
//! nothing time- or machine-dependent is recorded.

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Outcome of one assertion. `verdict` is the mathematical claim checked
/// by the operation, when it has one; `pass` additionally folds in the
/// comparison against the expected value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssertionReport {
    pub op: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<bool>,
    pub computed: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// All assertions of one scenario, in file order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub seed: u64,
    pub assertions: Vec<AssertionReport>,
}

/// Merged run report. For a suite the scenarios appear in path order; a
/// single command produces one synthetic scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub scenarios: Vec<ScenarioReport>,
    pub assertions: usize,
    pub failures: usize,
    pub all_passed: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Report {
    /// Builds the summary counts from scenario reports.
    pub fn from_scenarios(scenarios: Vec<ScenarioReport>, warnings: Vec<String>) -> Report {
        let assertions = scenarios.iter().map(|s| s.assertions.len()).sum();
        let failures = scenarios
            .iter()
            .flat_map(|s| s.assertions.iter())
            .filter(|a| !a.pass)
            .count();
        Report {
            scenarios,
            assertions,
            failures,
            all_passed: failures == 0,
            warnings,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Human rendering: one line per assertion plus a summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for w in &self.warnings {
            out.push_str(&format!("warning: {}\n", w));
        }
        for sc in &self.scenarios {
            match &sc.path {
                Some(p) => out.push_str(&format!("scenario {} ({})\n", sc.scenario, p)),
                None => out.push_str(&format!("scenario {}\n", sc.scenario)),
            }
            for a in &sc.assertions {
                let tag = if a.pass { "pass" } else { "FAIL" };
                out.push_str(&format!("  {}  {}", tag, a.op));
                if let Some(v) = a.verdict {
                    out.push_str(&format!("  verdict={}", v));
                }
                out.push_str(&format!("  computed={}", compact(&a.computed)));
                if let Some(e) = &a.expected {
                    out.push_str(&format!("  expected={}", compact(e)));
                }
                if let Some(msg) = &a.error {
                    out.push_str(&format!("  error: {}", msg));
                }
                out.push('\n');
            }
        }
        let status = if self.all_passed { "ok" } else { "FAILED" };
        out.push_str(&format!(
            "{}: {} scenario(s), {} assertion(s), {} failure(s)\n",
            status,
            self.scenarios.len(),
            self.assertions,
            self.failures
        ));
        out
    }
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("value serializes")
}
