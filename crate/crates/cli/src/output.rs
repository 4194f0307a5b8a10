//! The JSON report envelope and its text rendering.

use framedcb::report::{CheckRecord, Report};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub schema_version: u32,
    pub library_version: String,
    pub command: Vec<String>,
    pub datum_fingerprint: Option<String>,
    pub seed: u64,
    /// "pass", "fail" or "error"
    pub status: String,
    pub title: String,
    pub checks: Vec<CheckRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default)]
    pub data: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Envelope {
    pub fn new(command: Vec<String>, fingerprint: Option<String>, seed: u64) -> Self {
        Envelope {
            schema_version: SCHEMA_VERSION,
            library_version: framedcb::VERSION.to_string(),
            command,
            datum_fingerprint: fingerprint,
            seed,
            status: "error".into(),
            title: String::new(),
            checks: Vec::new(),
            notes: Vec::new(),
            data: Value::Null,
            error: None,
            elapsed_ms: None,
        }
    }

    pub fn with_report(mut self, rep: Report, data: Value) -> Self {
        self.status = if rep.all_passed() { "pass" } else { "fail" }.into();
        self.title = rep.title;
        self.checks = rep.checks;
        self.notes = rep.notes;
        self.data = data;
        self
    }

    pub fn with_error(mut self, kind: &str, message: &str) -> Self {
        self.status = "error".into();
        self.error = Some(ErrorInfo { kind: kind.into(), message: message.into() });
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} [{}]\n", if self.title.is_empty() { "report" } else { &self.title }, self.status);
        if let Some(e) = &self.error {
            out += &format!("error ({}): {}\n", e.kind, e.message);
        }
        for c in &self.checks {
            match &c.witness {
                Some(w) if !c.passed => out += &format!("FAIL  {}: {w}\n", c.name),
                _ => out += &format!("{}  {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name),
            }
        }
        for n in &self.notes {
            out += &format!("note: {n}\n");
        }
        if !self.data.is_null() {
            out += &serde_json::to_string_pretty(&self.data).expect("data serializes");
            out.push('\n');
        }
        out
    }
}
