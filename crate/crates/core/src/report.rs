//! Pass/fail records produced by the verification routines.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new(), notes: Vec::new() }
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.checks.push(CheckRecord { name: name.into(), passed: true, witness: None });
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(CheckRecord { name: name.into(), passed: false, witness: Some(witness.into()) });
    }

    /// Records a check; the witness closure only runs on failure.
    pub fn check(&mut self, name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.pass(name);
        } else {
            self.fail(name, witness());
        }
    }

    /// Records the outcome of a fallible computation; errors count as failures.
    pub fn check_result(&mut self, name: impl Into<String>, r: crate::Result<Option<String>>) {
        match r {
            Ok(None) => self.pass(name),
            Ok(Some(w)) => self.fail(name, w),
            Err(e) => self.fail(name, format!("error: {e}")),
        }
    }

    /// Informational remark that does not affect the status.
    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_and_status() {
        let mut a = Report::new("a");
        a.pass("x");
        assert!(a.all_passed());
        let mut b = Report::new("b");
        b.check("y", false, || "bad".into());
        a.merge(b);
        assert!(!a.all_passed());
        assert_eq!(a.failures().count(), 1);
        assert_eq!(a.checks[1].witness.as_deref(), Some("bad"));
    }
}
