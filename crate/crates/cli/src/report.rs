//! The run report every command emits.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// One input file, identified by content.
#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(path: &str, bytes: &[u8]) -> Self {
        InputDigest { path: path.to_string(), sha256: hex::encode(Sha256::digest(bytes)) }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Verdict {
    pub fn pass(check: impl Into<String>) -> Self {
        Verdict { check: check.into(), passed: true, witness: None }
    }

    pub fn fail(check: impl Into<String>, witness: Value) -> Self {
        Verdict { check: check.into(), passed: false, witness: Some(witness) }
    }

    pub fn from_result(check: impl Into<String>, result: Result<(), Value>) -> Self {
        match result {
            Ok(()) => Self::pass(check),
            Err(w) => Self::fail(check, w),
        }
    }
}

/// Results and verdicts of a single command.
#[derive(Debug, Default)]
pub struct Outcome {
    pub results: serde_json::Map<String, Value>,
    pub verdicts: Vec<Verdict>,
}

impl Outcome {
    pub fn put(&mut self, key: &str, value: impl Serialize) {
        self.results.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn verdict(&mut self, verdict: Verdict) {
        self.verdicts.push(verdict);
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub results: serde_json::Map<String, Value>,
    pub verdicts: Vec<Verdict>,
    pub passed: bool,
}

impl RunReport {
    pub fn new(command: &str, inputs: Vec<InputDigest>, outcome: Outcome) -> Self {
        RunReport {
            tool: "pcells",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            inputs,
            passed: outcome.passed(),
            results: outcome.results,
            verdicts: outcome.verdicts,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("serializable");
        text.push('\n');
        text
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.tool, self.version, self.command);
        for input in &self.inputs {
            out += &format!("input {} sha256:{}\n", input.path, input.sha256);
        }
        for (key, value) in &self.results {
            out += &format!("{key}: {}\n", serde_json::to_string(value).expect("serializable"));
        }
        for v in &self.verdicts {
            let status = if v.passed { "PASS" } else { "FAIL" };
            out += &format!("{status} {}", v.check);
            if let Some(w) = &v.witness {
                out += &format!(" witness: {}", serde_json::to_string(w).expect("serializable"));
            }
            out.push('\n');
        }
        out += if self.passed { "verdict: pass\n" } else { "verdict: fail\n" };
        out
    }
}
