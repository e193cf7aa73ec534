//! Theorem reports and their text and structured renderings.

use std::time::Duration;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
    Skipped(String),
    NoneFoundInBounds,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::Skipped(_) => "skipped",
            Verdict::NoneFoundInBounds => "none-found-in-bounds",
        }
    }

    pub fn is_violation(&self) -> bool {
        matches!(self, Verdict::Violated)
    }
}

/// The outcome of one theorem check on one instance. A violated report
/// carries the instance as a `.cx` document so it can be re-checked.
#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub theorem: String,
    pub instance: String,
    pub verdict: Verdict,
    pub detail: Vec<String>,
    pub witness: Option<String>,
    pub elapsed: Duration,
}

impl TheoremReport {
    pub fn new(theorem: &str, instance: impl Into<String>, verdict: Verdict) -> Self {
        TheoremReport {
            theorem: theorem.to_string(),
            instance: instance.into(),
            verdict,
            detail: Vec::new(),
            witness: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn with_detail(mut self, line: impl Into<String>) -> Self {
        self.detail.push(line.into());
        self
    }

    pub fn with_witness(mut self, doc: String) -> Self {
        self.witness = Some(doc);
        self
    }

    /// First 16 hex digits of SHA-256 over theorem id and instance text.
    pub fn instance_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.theorem.as_bytes());
        h.update([0]);
        h.update(self.instance.as_bytes());
        let digest = h.finalize();
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn render_text(&self, timing: bool) -> String {
        let mut out = format!("[{}] {}: {}", self.theorem, self.instance, self.verdict.label());
        if let Verdict::Skipped(r) = &self.verdict {
            out.push_str(&format!(" ({r})"));
        }
        if timing {
            out.push_str(&format!(" in {} ms", self.elapsed.as_millis()));
        }
        out.push('\n');
        for d in &self.detail {
            out.push_str("  ");
            out.push_str(d);
            out.push('\n');
        }
        if let Some(w) = &self.witness {
            out.push_str("  witness:\n");
            for line in w.lines() {
                out.push_str("    ");
                out.push_str(line);
                out.push('\n');
            }
        }
        out
    }

    /// One JSON record, without a trailing newline.
    pub fn render_structured(&self, timing: bool) -> String {
        let rec = Record {
            theorem: &self.theorem,
            instance: &self.instance,
            instance_hash: self.instance_hash(),
            verdict: self.verdict.label(),
            reason: match &self.verdict {
                Verdict::Skipped(r) => Some(r),
                _ => None,
            },
            detail: &self.detail,
            witness: self.witness.as_deref(),
            wall_ms: timing.then(|| self.elapsed.as_millis() as u64),
        };
        serde_json::to_string(&rec).expect("plain record")
    }
}

#[derive(Serialize)]
struct Record<'a> {
    theorem: &'a str,
    instance: &'a str,
    instance_hash: String,
    verdict: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'a String>,
    detail: &'a [String],
    witness: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_ms: Option<u64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structured_record_is_stable() {
        let r = TheoremReport::new("kernel-pair", "identity square", Verdict::Holds).with_detail("left: true");
        let s = r.render_structured(false);
        assert!(s.starts_with("{\"theorem\":\"kernel-pair\""));
        assert!(!s.contains("wall_ms"));
        assert_eq!(s, r.clone().render_structured(false));
        assert!(r.render_structured(true).contains("\"wall_ms\":0"));
        assert_eq!(r.instance_hash().len(), 16);
    }
}
