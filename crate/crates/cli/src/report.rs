use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub max_qubits: usize,
    pub closure_cap: usize,
    pub output: OutputFormat,
    pub seed: u64,
    pub threads: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputInfo {
    pub path: String,
    pub sha256: String,
}

impl InputInfo {
    pub fn read(path: &Path) -> anyhow::Result<(InputInfo, String)> {
        let bytes = std::fs::read(path).map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
        let info = InputInfo { path: path.display().to_string(), sha256: hex::encode(Sha256::digest(&bytes)) };
        let text = String::from_utf8(bytes).map_err(|_| anyhow::anyhow!("{} is not UTF-8", path.display()))?;
        Ok((info, text))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Decided,
    Aborted,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Decided => 0,
            Outcome::Aborted => 2,
        }
    }
}

/// What a command hands back for printing.
pub struct CommandResult {
    pub outcome: Outcome,
    pub summary: String,
    pub result: Value,
}

impl CommandResult {
    pub fn decided(summary: impl Into<String>, result: impl Serialize) -> anyhow::Result<Self> {
        Ok(CommandResult { outcome: Outcome::Decided, summary: summary.into(), result: serde_json::to_value(result)? })
    }

    pub fn aborted(summary: impl Into<String>, result: impl Serialize) -> anyhow::Result<Self> {
        Ok(CommandResult { outcome: Outcome::Aborted, summary: summary.into(), result: serde_json::to_value(result)? })
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    input: Option<&'a InputInfo>,
    config: &'a RunConfig,
    outcome: Outcome,
    summary: &'a str,
    result: &'a Value,
}

pub fn render(command: &str, input: Option<&InputInfo>, config: &RunConfig, r: &CommandResult) -> String {
    let env = Envelope {
        tool: "chx",
        version: env!("CARGO_PKG_VERSION"),
        command,
        input,
        config,
        outcome: r.outcome,
        summary: &r.summary,
        result: &r.result,
    };
    match config.output {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&env).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "chx {} {command}", env.version);
            if let Some(i) = input {
                let _ = writeln!(s, "input: {} (sha256 {})", i.path, i.sha256);
            }
            let _ = writeln!(
                s,
                "config: max_qubits={} closure_cap={} seed={} threads={}",
                config.max_qubits, config.closure_cap, config.seed, config.threads
            );
            let _ = writeln!(s, "outcome: {}", serde_json::to_value(r.outcome).expect("enum").as_str().unwrap_or(""));
            let _ = writeln!(s, "{}", r.summary);
            write_value(&mut s, &r.result, 0);
            s
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(t) => Some(t.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        write_value(out, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        write_value(out, x, depth + 1);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}
