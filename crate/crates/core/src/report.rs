//! The report envelope every command emits.

use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::primes::{Check, Status};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Keys serialize in declaration order; `result` maps are sorted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub version: String,
    pub command: String,
    pub algebra: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub module: Option<String>,
    pub seed: u64,
    pub bound: Option<usize>,
    pub checks: Vec<Check>,
    pub result: Value,
    /// `None` when timing is suppressed for reproducible output.
    pub elapsed_ms: Option<u64>,
}

impl ReportEnvelope {
    pub fn new(command: &str, algebra: &str, seed: u64) -> Self {
        ReportEnvelope {
            version: VERSION.to_string(),
            command: command.to_string(),
            algebra: algebra.to_string(),
            module: None,
            seed,
            bound: None,
            checks: Vec::new(),
            result: Value::Null,
            elapsed_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }

    pub fn set_elapsed(&mut self, elapsed: Duration) {
        self.elapsed_ms = Some(elapsed.as_millis() as u64);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are plain JSON")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("report: {e}")))
    }

    /// Human-readable rendering: one line per check, then the result.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skip => "skip",
            };
            out.push_str(&format!("[{status}] {}", c.name));
            if let Some(w) = &c.witness {
                out.push_str(&format!(": {w}"));
            }
            out.push('\n');
        }
        render_value(&self.result, 0, &mut out);
        out
    }
}

fn render_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Null => {}
        Value::String(s) => out.push_str(&format!("{pad}{s}\n")),
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => render_value(item, indent, out),
                    _ => out.push_str(&format!("{pad}{}\n", scalar(item))),
                }
            }
        }
        Value::Object(map) => {
            for (k, item) in map {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_value(item, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(item))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip_and_key_order() {
        let mut r = ReportEnvelope::new("normalize", "jordan_plane", 7);
        r.checks.push(Check::new("parse", true, None));
        r.checks.push(Check::new("oracle", false, Some("x".into())));
        r.result = json!({"z": 1, "a": ["b", "c"]});
        let text = r.to_json();
        assert_eq!(ReportEnvelope::from_json(&text).unwrap(), r);
        let keys: Vec<usize> = ["\"version\"", "\"command\"", "\"algebra\"", "\"seed\"", "\"bound\"", "\"checks\"", "\"result\"", "\"elapsed_ms\""]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(text.find("\"a\"").unwrap() < text.find("\"z\"").unwrap());
        assert!(!r.passed());
        assert!(r.to_text().contains("[FAIL] oracle: x"));
    }
}
