//! Versioned JSON run reports.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{Number, Value};

use crate::error::{Error, Result};

pub const SCHEMA: &str = "qdl/1";

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub warnings: Vec<String>,
    pub versions: BTreeMap<String, String>,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value, results: Value, warnings: Vec<String>) -> Self {
        let versions = BTreeMap::from([
            ("qdl".to_string(), env!("CARGO_PKG_VERSION").to_string()),
            ("schema".to_string(), SCHEMA.to_string()),
        ]);
        Self { schema: SCHEMA, command: command.to_string(), inputs: normalize_floats(inputs), results: normalize_floats(results), warnings, versions }
    }

    /// Pretty JSON with a trailing newline; keys are sorted, so output is deterministic.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values are serializable");
        s.push('\n');
        s
    }
}

/// Serializes any record into a report value.
pub fn to_value<S: Serialize>(v: &S) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Internal(format!("serialization: {e}")))
}

/// Formats a float with 17 significant digits (enough to round-trip an `f64`).
pub fn float17(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let s = format!("{x:.16e}");
    Value::Number(s.parse::<Number>().expect("scientific float literal"))
}

/// Rewrites every non-integer number in `v` with [`float17`].
pub fn normalize_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => float17(n.as_f64().expect("f64")),
        Value::Array(a) => Value::Array(a.into_iter().map(normalize_floats).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, normalize_floats(v))).collect()),
        other => other,
    }
}

/// Machine-readable error record for `--json` runs.
pub fn error_record(command: &str, e: &Error) -> String {
    let v = serde_json::json!({
        "schema": SCHEMA,
        "command": command,
        "error": { "kind": e.kind(), "message": e.to_string(), "exit_code": e.exit_code() },
    });
    let mut s = serde_json::to_string_pretty(&v).expect("error record");
    s.push('\n');
    s
}
