//! Reports: one JSON document per run, or the same verdicts as plain text.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Clone, Debug)]
pub struct Input {
    pub role: String,
    pub path: String,
    pub sha256: String,
}

impl Input {
    pub fn new(role: &str, path: &str, bytes: &[u8]) -> Self {
        Input {
            role: role.to_string(),
            path: path.to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Holds,
    Fails,
    Completed,
    Error,
    Capacity,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Completed => "completed",
            Verdict::Error => "error",
            Verdict::Capacity => "capacity-exceeded",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Holds | Verdict::Completed => 0,
            Verdict::Fails => 1,
            Verdict::Error => 2,
            Verdict::Capacity => 3,
        }
    }

    pub fn from_holds(holds: bool) -> Self {
        if holds {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub params: Map<String, Value>,
    pub seed: u64,
    pub capacity: usize,
    pub inputs: Vec<Input>,
    pub verdict: Verdict,
    pub result: Map<String, Value>,
    /// Human-format body lines.
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str, seed: u64, capacity: usize) -> Self {
        Report {
            command: command.to_string(),
            params: Map::new(),
            seed,
            capacity,
            inputs: Vec::new(),
            verdict: Verdict::Completed,
            result: Map::new(),
            lines: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.params.insert(key.to_string(), v.into());
        self
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.result.insert(key.to_string(), v.into());
        self
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.lines.push(s.into());
        self
    }

    /// Lowers the verdict: a failure wins over success, an error over both.
    pub fn merge_verdict(&mut self, v: Verdict) {
        let rank = |v: Verdict| match v {
            Verdict::Holds | Verdict::Completed => 0,
            Verdict::Fails => 1,
            Verdict::Error => 2,
            Verdict::Capacity => 3,
        };
        if rank(v) > rank(self.verdict) || (rank(v) == 0 && self.verdict == Verdict::Completed) {
            self.verdict = v;
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "tool": "tpa",
            "tool_version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "params": self.params,
            "seed": self.seed,
            "capacity": self.capacity,
            "inputs": self.inputs.iter().map(|i| json!({
                "role": i.role,
                "path": i.path,
                "sha256": i.sha256,
            })).collect::<Vec<_>>(),
            "verdict": self.verdict.name(),
            "exit_code": self.verdict.exit_code(),
            "result": self.result,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
            Format::Human => {
                let mut out = format!("tpa {} (seed {})\n", self.command, self.seed);
                for i in &self.inputs {
                    out.push_str(&format!("  {} {} sha256:{}\n", i.role, i.path, &i.sha256[..16]));
                }
                for l in &self.lines {
                    out.push_str(&clip(l));
                    out.push('\n');
                }
                out.push_str(&format!("verdict: {}\n", self.verdict.name()));
                out
            }
        }
    }
}

/// Long witness renderings are cut in human output; machine reports keep them.
fn clip(line: &str) -> String {
    const MAX: usize = 240;
    match line.char_indices().nth(MAX) {
        Some((i, _)) => format!("{} ...", &line[..i]),
        None => line.to_string(),
    }
}
