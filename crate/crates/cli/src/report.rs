//! JSON reports: command echo, digest of the inputs, named pass/fail
//! checks, and command-specific results.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone)]
pub struct Report {
    command: Vec<String>,
    input_digest: Option<String>,
    checks: Vec<(String, bool)>,
    fields: Map<String, Value>,
}

impl Report {
    /// `inputs` are the raw contents of the files read, in order; the digest
    /// is SHA-256 over their concatenation.
    pub fn new(command: Vec<String>, inputs: &[&str]) -> Self {
        let input_digest = (!inputs.is_empty()).then(|| {
            let mut hasher = Sha256::new();
            for text in inputs {
                hasher.update(text.as_bytes());
            }
            hex::encode(hasher.finalize())
        });
        Self {
            command,
            input_digest,
            checks: Vec::new(),
            fields: Map::new(),
        }
    }

    pub fn check(&mut self, name: &str, passed: bool) {
        self.checks.push((name.to_string(), passed));
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.fields.insert(key.to_string(), value);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, p)| *p)
    }

    pub fn render(&self) -> String {
        let checks: Map<String, Value> = self
            .checks
            .iter()
            .map(|(name, p)| (name.clone(), json!(if *p { "pass" } else { "fail" })))
            .collect();
        let failed: Vec<&str> = self
            .checks
            .iter()
            .filter(|(_, p)| !p)
            .map(|(name, _)| name.as_str())
            .collect();
        let mut root = Map::new();
        root.insert("command".into(), json!(self.command));
        root.insert("input_digest".into(), json!(self.input_digest));
        root.extend(self.fields.clone());
        root.insert("checks".into(), Value::Object(checks));
        root.insert("failed".into(), json!(failed));
        root.insert(
            "status".into(),
            json!(if self.passed() { "pass" } else { "fail" }),
        );
        let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_checks() {
        let mut r = Report::new(vec!["analyze".into()], &["abc"]);
        r.check("a", true);
        assert!(r.passed());
        r.check("b", false);
        let text = r.render();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["status"], "fail");
        assert_eq!(v["failed"], json!(["b"]));
        assert_eq!(
            v["input_digest"],
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn no_inputs_means_no_digest() {
        let r = Report::new(vec![], &[]);
        let v: Value = serde_json::from_str(&r.render()).unwrap();
        assert!(v["input_digest"].is_null());
        assert_eq!(v["status"], "pass");
    }
}
