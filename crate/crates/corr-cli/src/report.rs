//! Deterministic reports: machine-readable JSON and a human rendering that
//! agree on content.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unverified,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResultRow {
    pub label: String,
    pub status: Status,
    pub value: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub results: Vec<ResultRow>,
    pub flags: Vec<String>,
}

impl Report {
    pub fn any_failed(&self) -> bool {
        self.results.iter().any(|r| r.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {}\n", self.command));
        for r in &self.results {
            let status = match r.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Unverified => "unverified",
            };
            match &r.value {
                Some(v) => out.push_str(&format!("[{status}] {}: {v}\n", r.label)),
                None => out.push_str(&format!("[{status}] {}\n", r.label)),
            }
        }
        if !self.flags.is_empty() {
            out.push_str("flags:\n");
            for f in &self.flags {
                out.push_str(&format!("  - {f}\n"));
            }
        }
        out
    }
}
