//! Command reports. The JSON and text renderings are produced from the same
//! key/value lists, so both carry identical numbers.

use mfkit_core::orlov::HypersurfaceContext;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Default)]
pub struct Report {
    operation: String,
    context: Option<HypersurfaceContext>,
    inputs: Vec<(String, Value)>,
    results: Vec<(String, Value)>,
    verdicts: Vec<(String, Value)>,
    diagnostics: Vec<String>,
    unchecked: Vec<String>,
}

/// JSON integers only go up to `u64`; larger counts become strings.
pub fn count(c: u128) -> Value {
    u64::try_from(c).map_or_else(|_| Value::String(c.to_string()), Value::from)
}

/// First 16 hex digits of the SHA-256 of `text`.
pub fn digest(text: &str) -> String {
    let hash = Sha256::digest(text.as_bytes());
    hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

impl Report {
    pub fn new(operation: &str) -> Self {
        Report { operation: operation.to_string(), ..Report::default() }
    }

    pub fn context(mut self, ctx: Option<HypersurfaceContext>) -> Self {
        self.context = ctx;
        self
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.push((key.to_string(), value.into()));
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) {
        self.results.push((key.to_string(), value.into()));
    }

    pub fn verdict(&mut self, key: &str, value: impl Into<Value>) {
        self.verdicts.push((key.to_string(), value.into()));
    }

    pub fn diagnostic(&mut self, message: impl Into<String>) {
        self.diagnostics.push(message.into());
    }

    pub fn unchecked(&mut self, hypotheses: &[&str]) {
        self.unchecked.extend(hypotheses.iter().map(|h| h.to_string()));
    }

    pub fn to_json(&self) -> Value {
        let map = |pairs: &[(String, Value)]| -> Value {
            Value::Object(pairs.iter().cloned().collect::<Map<String, Value>>())
        };
        json!({
            "schema_version": 1,
            "operation": self.operation,
            "context": self.context.map(|c| json!({"n": c.n(), "d": c.d(), "a": c.a(), "e": c.e()})),
            "inputs": map(&self.inputs),
            "results": map(&self.results),
            "verdicts": map(&self.verdicts),
            "diagnostics": self.diagnostics,
            "unchecked_hypotheses": self.unchecked,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("operation: {}\n", self.operation);
        match self.context {
            Some(c) => out.push_str(&format!("context: {c}\n")),
            None => out.push_str("context: none\n"),
        }
        let section = |out: &mut String, title: &str, pairs: &[(String, Value)]| {
            out.push_str(title);
            out.push_str(":\n");
            if pairs.is_empty() {
                out.push_str("  (none)\n");
            }
            for (k, v) in pairs {
                out.push_str(&format!("  {k}: {}\n", plain(v)));
            }
        };
        section(&mut out, "inputs", &self.inputs);
        section(&mut out, "results", &self.results);
        section(&mut out, "verdicts", &self.verdicts);
        for (title, lines) in [("diagnostics", &self.diagnostics), ("unchecked hypotheses", &self.unchecked)] {
            out.push_str(title);
            out.push_str(":\n");
            if lines.is_empty() {
                out.push_str("  (none)\n");
            }
            for line in lines {
                out.push_str(&format!("  {line}\n"));
            }
        }
        out
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.to_json()).expect("reports serialize");
            s.push('\n');
            s
        } else {
            self.to_text()
        }
    }
}

/// Scalars print bare; arrays and objects as compact JSON.
fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "n/a".into(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renderings_agree() {
        let mut r = Report::new("rho point").context(Some(HypersurfaceContext::new(3, 4).unwrap()));
        r.input("n", 3);
        r.result("rho", 8);
        r.result("big", count(u128::MAX));
        r.verdict("pass", true);
        let text = r.to_text();
        assert!(text.contains("context: n = 3, d = 4, a = 0, e = 1"));
        assert!(text.contains("  rho: 8\n"));
        assert!(text.contains(&u128::MAX.to_string()));
        let json = r.to_json();
        assert_eq!(json["results"]["rho"], 8);
        assert_eq!(json["context"]["e"], 1);
        assert_eq!(json["verdicts"]["pass"], true);
    }

    #[test]
    fn digest_is_stable() {
        assert_eq!(digest("abc"), "ba7816bf8f01cfea");
    }
}
