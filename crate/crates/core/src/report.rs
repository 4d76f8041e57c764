//! Structured pass/fail records for identity sweeps.

use serde::Serialize;
use serde_json::Value;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One verified identity. A witness is attached exactly when the check fails.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub tuple_count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, tuple_count: u64) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            tuple_count,
            witness: None,
            note: None,
        }
    }

    pub fn fail(name: impl Into<String>, tuple_count: u64, witness: Value) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            tuple_count,
            witness: Some(witness),
            note: None,
        }
    }

    pub fn skipped(name: impl Into<String>, note: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Skipped,
            tuple_count: 0,
            witness: None,
            note: Some(note.into()),
        }
    }

    /// Pass when `witness` is `None`.
    pub fn from_witness(name: impl Into<String>, tuple_count: u64, witness: Option<Value>) -> Self {
        match witness {
            None => Check::pass(name, tuple_count),
            Some(w) => Check::fail(name, tuple_count, w),
        }
    }

    /// Pass/fail from a boolean, with `witness` used on failure.
    pub fn expect(name: impl Into<String>, ok: bool, witness: impl FnOnce() -> Value) -> Self {
        if ok {
            Check::pass(name, 1)
        } else {
            Check::fail(name, 1, witness())
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_tuples(mut self, tuple_count: u64) -> Self {
        self.tuple_count = tuple_count;
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub group: String,
    pub character: Option<i64>,
    pub window: Option<i64>,
    pub checks: Vec<Check>,
    pub engine_version: String,
}

impl VerificationReport {
    pub fn new(suite: &str, group: &str, character: Option<i64>, window: Option<i64>) -> Self {
        VerificationReport {
            suite: suite.into(),
            group: group.into(),
            character,
            window,
            checks: Vec::new(),
            engine_version: ENGINE_VERSION.into(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    /// A suite passes iff every check passes; skipped checks do not fail it.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("## {} on {}\n\n", self.suite, self.group);
        if let Some(k) = self.character {
            out.push_str(&format!("character index: {k}  \n"));
        }
        if let Some(w) = self.window {
            out.push_str(&format!("window: {w}  \n"));
        }
        out.push_str(&format!(
            "result: **{}**\n\n| check | status | tuples | note |\n|---|---|---|---|\n",
            if self.passed() { "pass" } else { "fail" }
        ));
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skipped",
            };
            let mut note = c.note.clone().unwrap_or_default();
            if let Some(w) = &c.witness {
                if !note.is_empty() {
                    note.push_str("; ");
                }
                note.push_str(&format!("witness: `{w}`"));
            }
            out.push_str(&format!(
                "| {} | {} | {} | {} |\n",
                c.name, status, c.tuple_count, note
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn suite_status() {
        let mut r = VerificationReport::new("gs", "Z5", Some(1), None);
        r.push(Check::pass("a", 3));
        r.push(Check::skipped("b", "not applicable"));
        assert!(r.passed());
        r.push(Check::fail("c", 1, json!({"i": 0})));
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        let js: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(js["checks"][2]["status"], "fail");
        assert!(js["checks"][0].get("witness").is_none());
        assert!(r.to_markdown().contains("| c | FAIL | 1 |"));
    }
}
