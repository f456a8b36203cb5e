//! JSON reports and exit statuses.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SEMANTIC: i32 = 3;
pub const EXIT_CAP: i32 = 4;

/// A command that could not produce results.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Parse(String),
    Semantic(String),
    Cap(String),
}

impl Failure {
    pub fn exit_status(&self) -> i32 {
        match self {
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Semantic(_) => EXIT_SEMANTIC,
            Failure::Cap(_) => EXIT_CAP,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Parse(_) => "parse",
            Failure::Semantic(_) => "semantic",
            Failure::Cap(_) => "cap",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Semantic(m) | Failure::Cap(m) => m,
        }
    }
}

/// Successful output; `exit_status` is nonzero only for failed verification
/// or validation.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub results: Value,
    pub warnings: Vec<String>,
    pub exit_status: i32,
}

impl Outcome {
    pub fn ok(results: Value) -> Self {
        Outcome {
            results,
            warnings: Vec::new(),
            exit_status: EXIT_OK,
        }
    }
}

/// SHA-256 over the input files, each prefixed by its length.
pub fn inputs_digest(inputs: &[Vec<u8>]) -> String {
    let mut h = Sha256::new();
    for bytes in inputs {
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    hex::encode(h.finalize())
}

pub fn render(command: &Value, digest: Option<&str>, outcome: Result<&Outcome, &Failure>) -> (String, i32) {
    let (body, status) = match outcome {
        Ok(o) => (
            json!({
                "command": command,
                "inputs_digest": digest,
                "results": o.results,
                "warnings": o.warnings,
                "exit_status": o.exit_status,
            }),
            o.exit_status,
        ),
        Err(f) => (
            json!({
                "command": command,
                "inputs_digest": digest,
                "error": { "kind": f.kind(), "message": f.message() },
                "warnings": Vec::<String>::new(),
                "exit_status": f.exit_status(),
            }),
            f.exit_status(),
        ),
    };
    let text = serde_json::to_string_pretty(&body).expect("JSON values serialize");
    (text, status)
}
