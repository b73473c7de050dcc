//! The JSON document every subcommand emits.

use g2calc::report::Check;
use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Runtime {
    pub tool_version: &'static str,
    pub arithmetic: &'static str,
    /// Value of `G2CALC_THREADS` if set; the results never depend on it.
    pub thread_cap: Option<usize>,
}

impl Runtime {
    pub fn current() -> Self {
        Runtime {
            tool_version: env!("CARGO_PKG_VERSION"),
            arithmetic: "exact rational",
            thread_cap: std::env::var("G2CALC_THREADS").ok().and_then(|s| s.parse().ok()),
        }
    }
}

/// Field order is fixed by the struct; `data` and `parameters` are sorted maps.
#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub command: String,
    pub suite: String,
    pub seed: u64,
    pub parameters: BTreeMap<String, Value>,
    pub anchors: Vec<String>,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub data: Value,
    pub runtime: Runtime,
}

impl ReportDocument {
    pub fn new(command: &str, suite: &str, seed: u64, checks: Vec<Check>, data: Value) -> Self {
        let mut anchors: Vec<String> = checks.iter().map(|c| c.anchor.clone()).collect();
        anchors.sort();
        anchors.dedup();
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            suite: suite.into(),
            seed,
            parameters: BTreeMap::new(),
            anchors,
            pass: checks.iter().all(|c| c.pass),
            checks,
            data,
            runtime: Runtime::current(),
        }
    }

    pub fn param(mut self, key: &str, v: impl Serialize) -> Self {
        self.parameters.insert(key.into(), serde_json::to_value(v).expect("serializable parameter"));
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per check plus a summary.
    pub fn to_text(&self) -> String {
        let mut s = format!("g2calc {} {} (seed {})\n", self.command, self.suite, self.seed);
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            s.push_str(&format!("{tag}  {}  [{}]  {}\n", c.name, c.anchor, c.detail));
        }
        let ok = self.checks.iter().filter(|c| c.pass).count();
        s.push_str(&format!("{ok}/{} checks pass\n", self.checks.len()));
        s
    }
}
