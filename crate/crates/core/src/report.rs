//! Pass/fail reports for property suites.

use serde::Serialize;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Entry {
    pub name: String,
    pub passed: bool,
    /// Residual or failure description; empty when passed.
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new(suite: &str) -> Report {
        Report { suite: suite.to_string(), entries: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        let detail = if passed { String::new() } else { detail.into() };
        self.entries.push(Entry { name: name.into(), passed, detail });
    }

    /// Records a check whose evaluation may itself have failed.
    pub fn push_result(&mut self, name: impl Into<String>, r: crate::Result<Option<String>>) {
        match r {
            Ok(None) => self.push(name, true, ""),
            Ok(Some(d)) => self.push(name, false, d),
            Err(e) => self.push(name, false, format!("error: {e}")),
        }
    }

    pub fn extend(&mut self, o: Report) {
        self.entries.extend(o.entries);
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("suite {}: {}/{} passed\n", self.suite, self.entries.iter().filter(|e| e.passed).count(), self.entries.len());
        for e in &self.entries {
            s.push_str(&format!("{} {}", if e.passed { "ok  " } else { "FAIL" }, e.name));
            if !e.passed {
                s.push_str(&format!(": {}", e.detail));
            }
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
