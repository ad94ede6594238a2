//! JSON envelope shared by every subcommand.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Duration;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA: u64 = 1;

/// Collects the hashes of every input a command read.
#[derive(Debug, Default)]
pub struct Inputs(Map<String, Value>);

impl Inputs {
    pub fn add(&mut self, name: &str, bytes: &[u8]) {
        let digest = Sha256::digest(bytes);
        self.0
            .insert(name.to_string(), Value::String(hex::encode(digest)));
    }
}

/// The compared payload is everything except `timing`.
pub fn envelope(
    command: &str,
    inputs: Inputs,
    result: Value,
    mut timing: Map<String, Value>,
    elapsed: Duration,
) -> Value {
    timing.insert("elapsed_ms".into(), json!(elapsed.as_millis() as u64));
    json!({
        "schema": SCHEMA,
        "command": command,
        "input_sha256": Value::Object(inputs.0),
        "result": result,
        "timing": Value::Object(timing),
    })
}

/// Pretty JSON with a trailing newline, to stdout or to `out`.
pub fn emit(report: &Value, out: Option<&Path>) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

/// Moves `elapsed_ms` out of a serialized search report.
pub fn take_elapsed(value: &mut Value) -> Option<Value> {
    value.as_object_mut()?.remove("elapsed_ms")
}
