use serde::Serialize;
use serde_json::{Map, Value};

use hopf_pairs::json::Session;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// The body written by `--out`. Holds nothing that varies between runs on
/// the same inputs; timing goes to stderr.
#[derive(Clone, Debug, Serialize)]
pub struct CliReport {
    pub schema: u64,
    pub command: Vec<String>,
    pub session: Option<Session>,
    pub checks: Vec<Check>,
    pub data: Map<String, Value>,
    pub pass: bool,
    #[serde(skip)]
    pub summary: Vec<String>,
}

impl CliReport {
    pub fn new(command: Vec<String>, session: Option<Session>) -> Self {
        CliReport {
            schema: hopf_pairs::json::SCHEMA,
            command,
            session,
            checks: Vec::new(),
            data: Map::new(),
            pass: true,
            summary: Vec::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.pass &= pass;
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    /// Record a verification report as one check.
    pub fn check_report(&mut self, name: &str, r: &hopf_pairs::Report) {
        let detail = if r.is_ok() { "ok".to_string() } else { r.to_string().trim_end().to_string() };
        self.check(name, r.is_ok(), detail);
    }

    pub fn put(&mut self, key: &str, v: impl Serialize) {
        self.data.insert(key.into(), serde_json::to_value(v).expect("report values serialize"));
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.summary.push(s.into());
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        for l in &self.summary {
            out.push_str(l);
            out.push('\n');
        }
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            let mut detail = c.detail.lines();
            match detail.next() {
                Some(first) if !first.is_empty() => out.push_str(&format!("{tag} {}: {first}\n", c.name)),
                _ => out.push_str(&format!("{tag} {}\n", c.name)),
            }
            for rest in detail {
                out.push_str(&format!("       {rest}\n"));
            }
        }
        out.push_str(if self.pass { "result: pass\n" } else { "result: fail\n" });
        out
    }
}
