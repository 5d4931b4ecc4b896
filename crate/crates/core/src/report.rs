//! Verification report trees and their JSON / markdown renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// Present on the root only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<u32>,
    pub name: String,
    pub status: Status,
    pub witness: Value,
    pub elapsed_ms: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Report>,
}

impl Report {
    pub fn leaf(name: impl Into<String>, pass: bool, witness: Value) -> Report {
        Report {
            schema: None,
            name: name.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            witness,
            elapsed_ms: None,
            children: Vec::new(),
        }
    }

    pub fn error(name: impl Into<String>, msg: impl ToString) -> Report {
        Report {
            schema: None,
            name: name.into(),
            status: Status::Error,
            witness: Value::String(msg.to_string()),
            elapsed_ms: None,
            children: Vec::new(),
        }
    }

    /// Internal node; its status is the conjunction of the children, with
    /// `error` dominating `fail`.
    pub fn node(name: impl Into<String>, children: Vec<Report>) -> Report {
        let status = if children.iter().any(|c| c.status == Status::Error) {
            Status::Error
        } else if children.iter().all(|c| c.status == Status::Pass) {
            Status::Pass
        } else {
            Status::Fail
        };
        Report { schema: None, name: name.into(), status, witness: Value::Null, elapsed_ms: None, children }
    }

    pub fn with_witness(mut self, witness: Value) -> Report {
        self.witness = witness;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Depth-first search by name.
    pub fn find(&self, name: &str) -> Option<&Report> {
        if self.name == name {
            return Some(self);
        }
        self.children.iter().find_map(|c| c.find(name))
    }

    /// Leaves in depth-first order.
    pub fn leaves(&self) -> Vec<&Report> {
        if self.children.is_empty() {
            return vec![self];
        }
        self.children.iter().flat_map(Report::leaves).collect()
    }

    pub fn failures(&self) -> Vec<&Report> {
        self.leaves().into_iter().filter(|r| !r.passed()).collect()
    }

    pub fn to_json(&self) -> String {
        let mut root = self.clone();
        root.schema = Some(SCHEMA_VERSION);
        let mut s = serde_json::to_string_pretty(&root).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        let mut r: Report = serde_json::from_str(text)?;
        r.schema = None;
        Ok(r)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("# {} ({})\n\n", self.name, self.status.label());
        for c in &self.children {
            render_md(c, 0, &mut out);
        }
        if self.children.is_empty() {
            render_md(self, 0, &mut out);
        }
        out
    }
}

fn render_md(r: &Report, depth: usize, out: &mut String) {
    let indent = "  ".repeat(depth);
    let _ = write!(out, "{indent}- **{}** {}", r.status.label(), r.name);
    if let Some(ms) = r.elapsed_ms {
        let _ = write!(out, " ({ms} ms)");
    }
    match &r.witness {
        Value::Null => {}
        Value::String(s) => {
            let _ = write!(out, ": {s}");
        }
        w => {
            let _ = write!(out, ": `{w}`");
        }
    }
    out.push('\n');
    for c in &r.children {
        render_md(c, depth + 1, out);
    }
}

#[cfg(test)]
mod tests {
    use serde_json::json;

    use super::*;

    #[test]
    fn leaf_json_keys_in_order() {
        let r = Report::leaf("x", true, json!({"k": "g^3"}));
        let s = r.to_json();
        let pos: Vec<usize> = ["\"schema\"", "\"name\"", "\"status\"", "\"witness\"", "\"elapsed_ms\""]
            .iter()
            .map(|k| s.find(k).unwrap())
            .collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert!(!s.contains("children"));
    }

    #[test]
    fn node_status_is_conjunction() {
        let a = Report::leaf("a", true, Value::Null);
        let b = Report::leaf("b", false, Value::Null);
        assert_eq!(Report::node("n", vec![a.clone(), a.clone()]).status, Status::Pass);
        assert_eq!(Report::node("n", vec![a.clone(), b.clone()]).status, Status::Fail);
        assert_eq!(Report::node("n", vec![b, Report::error("e", "boom")]).status, Status::Error);
    }

    #[test]
    fn json_round_trip() {
        let tree = Report::node(
            "root",
            vec![Report::leaf("a", true, json!(["g^2", [1, 2]])), Report::node("n", vec![Report::error("e", "bad")])],
        );
        assert_eq!(Report::from_json(&tree.to_json()).unwrap(), tree);
    }
}
