//! Structured check reports: a tree of `{name, cite, status, data}` nodes
//! that renders to deterministic JSON or to indented text.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// Not enough data to decide; distinct from a failure.
    Incomplete,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Incomplete => "INCOMPLETE",
            Status::Fail => "FAIL",
        }
    }
}

/// One node of a report. A node's status is never better than that of its
/// worst child.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub cite: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Check>,
}

impl Check {
    pub fn leaf(name: impl Into<String>, cite: impl Into<String>, status: Status, data: Value) -> Self {
        Check { name: name.into(), cite: cite.into(), status, data, children: Vec::new() }
    }

    pub fn pass_if(name: impl Into<String>, cite: impl Into<String>, ok: bool, data: Value) -> Self {
        Self::leaf(name, cite, Status::from_bool(ok), data)
    }

    /// A node whose status is the worst of its children's.
    pub fn group(name: impl Into<String>, cite: impl Into<String>, data: Value, children: Vec<Check>) -> Self {
        let status = children.iter().map(|c| c.status).max().unwrap_or(Status::Pass);
        Check { name: name.into(), cite: cite.into(), status, data, children }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Depth-first search by name.
    pub fn find(&self, name: &str) -> Option<&Check> {
        if self.name == name {
            return Some(self);
        }
        self.children.iter().find_map(|c| c.find(name))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Indented text, one node per line followed by its data.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, 0);
        out
    }

    fn write_text(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        let _ = write!(out, "{pad}[{}] {}", self.status.label(), self.name);
        if !self.cite.is_empty() {
            let _ = write!(out, "  ({})", self.cite);
        }
        out.push('\n');
        if let Value::Object(map) = &self.data {
            for (k, v) in map {
                let shown = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                let _ = writeln!(out, "{pad}    {k}: {shown}");
            }
        } else if !self.data.is_null() {
            let _ = writeln!(out, "{pad}    {}", self.data);
        }
        for c in &self.children {
            c.write_text(out, depth + 1);
        }
    }
}
