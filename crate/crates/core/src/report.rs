use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// Machine-readable outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub schema: u32,
    pub name: String,
    pub params: Value,
    pub defects: BTreeMap<String, f64>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, params: Value) -> Self {
        CheckReport {
            schema: SCHEMA_VERSION,
            name: name.into(),
            params,
            defects: BTreeMap::new(),
            pass: true,
            notes: Vec::new(),
            data: Value::Null,
        }
    }

    /// Records `value` under `key`, keeping the larger of the old and new value.
    pub fn defect(&mut self, key: &str, value: f64) {
        let slot = self.defects.entry(key.to_string()).or_insert(0.0);
        if value > *slot || value.is_nan() {
            *slot = value;
        }
    }

    pub fn fail(&mut self, note: impl Into<String>) {
        self.pass = false;
        self.notes.push(note.into());
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defects_keep_maximum() {
        let mut r = CheckReport::new("t", serde_json::json!({"tol": 1e-8}));
        r.defect("a", 1.0);
        r.defect("a", 0.5);
        r.defect("b", 0.0);
        assert_eq!(r.defects["a"], 1.0);
        assert_eq!(r.defects["b"], 0.0);
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["pass"], true);
        assert!(v.get("notes").is_none());
    }
}
