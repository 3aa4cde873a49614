//! Machine-readable run reports: versioned JSON, CSV, or plain text, with
//! deterministic ordering and an exit-code contract (0 pass, 1 fail, 2 usage).

use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub mode: String,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

#[derive(Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub params: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
}

impl Report {
    pub fn new(command: &str, mode: &str) -> Self {
        Report {
            schema: 1,
            tool: "holonomy-lab",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            mode: mode.to_string(),
            checks: Vec::new(),
            summary: Summary { total: 0, passed: 0 },
        }
    }

    pub fn push(&mut self, rec: CheckRecord) {
        self.summary.total += 1;
        if rec.pass {
            self.summary.passed += 1;
        }
        self.checks.push(rec);
    }

    pub fn all_pass(&self) -> bool {
        self.summary.passed == self.summary.total
    }

    pub fn render(&self, format: &str) -> String {
        match format {
            "json" => serde_json::to_string_pretty(self).expect("report serializes"),
            "csv" => {
                let mut out = String::from("check,params,value,threshold,pass\n");
                for c in &self.checks {
                    let params = c
                        .params
                        .iter()
                        .map(|(k, v)| format!("{}={}", k, v))
                        .collect::<Vec<_>>()
                        .join(";");
                    out.push_str(&format!(
                        "{},{},{},{},{}\n",
                        c.check,
                        params,
                        c.value.map(|v| format!("{:.12e}", v)).unwrap_or_default(),
                        c.threshold
                            .map(|v| format!("{:.3e}", v))
                            .unwrap_or_default(),
                        c.pass
                    ));
                }
                out
            }
            _ => {
                let mut out = String::new();
                for c in &self.checks {
                    let params = c
                        .params
                        .iter()
                        .map(|(k, v)| format!("{}={}", k, v))
                        .collect::<Vec<_>>()
                        .join(" ");
                    let status = if c.pass { "PASS" } else { "FAIL" };
                    out.push_str(&format!("[{}] {} {}", status, c.check, params));
                    if let Some(v) = c.value {
                        out.push_str(&format!(" value={:.6e}", v));
                    }
                    if let Some(t) = c.threshold {
                        out.push_str(&format!(" threshold={:.1e}", t));
                    }
                    if let Some(n) = &c.note {
                        out.push_str(&format!(" ({})", n));
                    }
                    out.push('\n');
                }
                out.push_str(&format!(
                    "{}/{} checks passed\n",
                    self.summary.passed, self.summary.total
                ));
                out
            }
        }
    }
}

/// Builder-style record construction keeps call sites compact.
pub fn record(check: &str) -> CheckRecord {
    CheckRecord {
        check: check.to_string(),
        params: BTreeMap::new(),
        value: None,
        threshold: None,
        note: None,
        pass: false,
    }
}

impl CheckRecord {
    pub fn param(mut self, k: &str, v: impl std::fmt::Display) -> Self {
        self.params.insert(k.to_string(), v.to_string());
        self
    }
    pub fn value(mut self, v: f64) -> Self {
        self.value = Some(v);
        self
    }
    pub fn threshold(mut self, t: f64) -> Self {
        self.threshold = Some(t);
        self
    }
    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.note = Some(n.into());
        self
    }
    pub fn pass(mut self, p: bool) -> Self {
        self.pass = p;
        self
    }
}
