//! Command reports: a stable plain-text layout and a JSON variant.

use std::fmt::Write as _;

use serde::Serialize;

use crate::linalg::{Matrix, Scalar};

pub const SCHEMA: &str = "coring-kit-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
}

impl std::fmt::Display for Answer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Answer {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Answer::Yes => "yes",
            Answer::No => "no",
        }
    }
}

/// Whether a verdict comes from a criterion or from sampling a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Proved,
    Sampled,
}

impl Basis {
    fn as_str(self) -> &'static str {
        match self {
            Basis::Proved => "proved",
            Basis::Sampled => "sampled",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Entry {
    Text { key: String, value: String },
    Number { key: String, value: usize },
    Vector { key: String, value: Vec<Scalar>, terms: String },
    Matrix { key: String, value: Matrix },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub coring: String,
    pub coring_dim: usize,
    pub field: String,
    pub verdict: Answer,
    pub basis: Basis,
    pub entries: Vec<Entry>,
}

/// `Σ c_i * label_i`, skipping zeros; `0` for the zero vector.
pub fn terms(v: &[Scalar], labels: &[String]) -> String {
    let parts: Vec<String> = v
        .iter()
        .zip(labels)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, l)| {
            if c.is_one() {
                l.clone()
            } else {
                format!("{c}*{l}")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

impl Report {
    pub fn new(command: &str, coring: &str, coring_dim: usize, field: String) -> Self {
        Report {
            schema: SCHEMA,
            command: command.to_string(),
            coring: coring.to_string(),
            coring_dim,
            field,
            verdict: Answer::No,
            basis: Basis::Proved,
            entries: Vec::new(),
        }
    }

    pub fn text(&mut self, key: &str, value: impl Into<String>) {
        self.entries.push(Entry::Text {
            key: key.into(),
            value: value.into(),
        });
    }

    pub fn number(&mut self, key: &str, value: usize) {
        self.entries.push(Entry::Number {
            key: key.into(),
            value,
        });
    }

    pub fn vector(&mut self, key: &str, value: &[Scalar], labels: &[String]) {
        self.entries.push(Entry::Vector {
            key: key.into(),
            value: value.to_vec(),
            terms: terms(value, labels),
        });
    }

    pub fn matrix(&mut self, key: &str, value: &Matrix) {
        self.entries.push(Entry::Matrix {
            key: key.into(),
            value: value.clone(),
        });
    }

    pub fn entry(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| match e {
            Entry::Text { key: k, .. }
            | Entry::Number { key: k, .. }
            | Entry::Vector { key: k, .. }
            | Entry::Matrix { key: k, .. } => k == key,
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "report {}", self.schema);
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "coring: {} (dim {})", self.coring, self.coring_dim);
        let _ = writeln!(out, "field: {}", self.field);
        let _ = writeln!(out, "verdict: {} ({})", self.verdict.as_str(), self.basis.as_str());
        for e in &self.entries {
            match e {
                Entry::Text { key, value } => {
                    let _ = writeln!(out, "{key}: {value}");
                }
                Entry::Number { key, value } => {
                    let _ = writeln!(out, "{key}: {value}");
                }
                Entry::Vector { key, value, terms } => {
                    let dense: Vec<String> = value.iter().map(ToString::to_string).collect();
                    let _ = writeln!(out, "{key}: {terms}");
                    let _ = writeln!(out, "{key} (coordinates): [{}]", dense.join(" "));
                }
                Entry::Matrix { key, value } => {
                    let _ = writeln!(out, "{key} ({}x{}):", value.rows(), value.cols());
                    for line in value.to_string().lines() {
                        let _ = writeln!(out, "  {line}");
                    }
                }
            }
        }
        out
    }

    pub fn render_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
