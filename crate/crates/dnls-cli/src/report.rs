use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Acceptance threshold of a metric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Tolerance {
    /// value < tol
    Below(f64),
    /// lo < value < hi
    Band([f64; 2]),
    /// recorded for information only; serialized as null
    Info,
}

impl Tolerance {
    pub fn accepts(&self, v: f64) -> bool {
        match *self {
            Tolerance::Below(t) => v < t,
            Tolerance::Band([lo, hi]) => v > lo && v < hi,
            Tolerance::Info => true,
        }
    }
}

impl std::fmt::Display for Tolerance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tolerance::Below(t) => write!(f, "< {t:e}"),
            Tolerance::Band([lo, hi]) => write!(f, "in ({lo}, {hi})"),
            Tolerance::Info => f.write_str("info"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metric {
    pub name: String,
    pub value: f64,
    pub tol: Tolerance,
    pub pass: bool,
}

impl Metric {
    pub fn new(name: impl Into<String>, value: f64, tol: Tolerance) -> Self {
        // NaN never passes
        Self { name: name.into(), value, tol, pass: tol.accepts(value) }
    }

    pub fn info(name: impl Into<String>, value: f64) -> Self {
        Self::new(name, value, Tolerance::Info)
    }

    pub fn below(name: impl Into<String>, value: f64, tol: f64) -> Self {
        Self::new(name, value, Tolerance::Below(tol))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs_digest: String,
    pub metrics: Vec<Metric>,
    pub artifacts: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str, inputs: &str) -> Self {
        let digest = Sha256::digest(inputs.as_bytes());
        let inputs_digest = digest.iter().map(|b| format!("{b:02x}")).collect();
        Self { command: command.into(), inputs_digest, metrics: Vec::new(), artifacts: Vec::new(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.metrics.iter().all(|m| m.pass)
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }
}
