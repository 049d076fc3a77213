//! Text and JSON reports, schema `gbs-report/v1`.

use std::io::{self, Write};
use std::path::Path;

use gbs_core::{GbsError, SearchBudget};
use serde::Serialize;
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "gbs-report/v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Inconclusive,
    Error,
}

impl Verdict {
    fn as_str(self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Error => "error",
        }
    }
}

#[derive(Debug)]
pub struct Report {
    command: &'static str,
    inputs: Vec<String>,
    verdict: Verdict,
    lines: Vec<String>,
    fields: Map<String, Value>,
}

impl Report {
    pub fn new(command: &'static str, inputs: &[&Path], verdict: Verdict) -> Self {
        Report {
            command,
            inputs: inputs.iter().map(|p| p.display().to_string()).collect(),
            verdict,
            lines: Vec::new(),
            fields: Map::new(),
        }
    }

    pub fn line(mut self, text: impl Into<String>) -> Self {
        self.lines.push(text.into());
        self
    }

    pub fn field(mut self, key: &str, value: impl Serialize) -> Self {
        self.fields.insert(key.into(), serde_json::to_value(value).expect("report fields serialize"));
        self
    }

    pub fn error(command: &'static str, inputs: &[&Path], kind: &str, message: String) -> Self {
        Report::new(command, inputs, Verdict::Error)
            .field("error", json!({ "kind": kind, "message": message }))
            .line(format!("error: {message}"))
    }

    pub fn from_core(command: &'static str, inputs: &[&Path], e: &GbsError) -> Self {
        Report::error(command, inputs, e.kind(), e.to_string())
    }

    pub fn exit_code(&self) -> u8 {
        match self.verdict {
            Verdict::Yes => 0,
            Verdict::No => 1,
            Verdict::Error => 2,
            Verdict::Inconclusive => 3,
        }
    }

    pub fn to_json(&self, budget: &SearchBudget) -> Value {
        let mut out = Map::new();
        out.insert("schema".into(), SCHEMA.into());
        out.insert("command".into(), self.command.into());
        out.insert("inputs".into(), json!(self.inputs));
        out.insert("verdict".into(), self.verdict.as_str().into());
        out.insert("budget".into(), json!(budget));
        out.extend(self.fields.clone());
        Value::Object(out)
    }

    /// Text errors go to stderr; a closed pipe ends output silently.
    pub fn emit(&self, json: bool, budget: &SearchBudget) {
        let lines = if json {
            vec![serde_json::to_string_pretty(&self.to_json(budget)).expect("values serialize")]
        } else {
            self.lines.clone()
        };
        let out: Box<dyn Write> = if !json && self.verdict == Verdict::Error {
            Box::new(io::stderr().lock())
        } else {
            Box::new(io::stdout().lock())
        };
        let mut out = io::BufWriter::new(out);
        let _ = lines.iter().try_for_each(|l| writeln!(out, "{l}")).and_then(|()| out.flush());
    }
}
