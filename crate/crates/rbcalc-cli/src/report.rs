//! The report every command prints, as text or JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rbcalc::report::{CheckResult, Report};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Why a command could not run at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub kind: &'static str,
    pub message: String,
}

impl InputError {
    pub fn new(kind: &'static str, message: impl ToString) -> Self {
        InputError {
            kind,
            message: message.to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    /// Command-specific output (an expansion, a Betti table, ...).
    pub result: Option<Value>,
    /// Lines shown before the checks in text form.
    pub text: Vec<String>,
    pub error: Option<InputError>,
    /// Only set under `--timing`, so that reports stay byte-identical otherwise.
    pub wall_time_ms: Option<u128>,
}

impl RunReport {
    pub fn new(command: &str, seed: u64) -> Self {
        RunReport {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            seed,
            checks: Vec::new(),
            result: None,
            text: Vec::new(),
            error: None,
            wall_time_ms: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, report: Report) {
        self.checks.extend(report.checks);
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(CheckResult::passed)
    }

    pub fn exit_code(&self) -> i32 {
        match (&self.error, self.passed()) {
            (Some(_), _) => 2,
            (None, true) => 0,
            (None, false) => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "command": self.command,
            "parameters": self.parameters,
            "seed": self.seed,
            "passed": self.passed(),
            "checks": self.checks,
        });
        if let Some(r) = &self.result {
            v["result"] = r.clone();
        }
        if let Some(e) = &self.error {
            v["error"] = json!({"kind": e.kind, "message": e.message});
        }
        if let Some(t) = self.wall_time_ms {
            v["wall_time_ms"] = json!(t);
        }
        v
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "parameters: {}", params.join(" "));
        let _ = writeln!(out, "seed: {}", self.seed);
        for line in &self.text {
            let _ = writeln!(out, "{line}");
        }
        for c in &self.checks {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{tag} {} ({} checked, {} failed)", c.name, c.checked, c.failed);
            if let Some(w) = &c.first_counterexample {
                let _ = writeln!(out, "  first counterexample: {w}");
            }
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error ({}): {}", e.kind, e.message);
        }
        if let Some(t) = self.wall_time_ms {
            let _ = writeln!(out, "wall time: {t} ms");
        }
        let _ = writeln!(out, "verdict: {}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serialises");
                s.push('\n');
                s
            }
        }
    }
}
