use std::time::Duration;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    CheckFailed,
    Budget,
}

impl Status {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Ok
        } else {
            Status::CheckFailed
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: u32,
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    config: &'a Value,
    status: Status,
    pass: bool,
    budget_exhausted: bool,
    result: &'a Value,
    timing: Timing,
}

#[derive(Serialize, Clone, Copy, Default)]
pub struct Timing {
    elapsed_ms: f64,
}

pub enum Report {
    Full {
        command: &'static str,
        config: Value,
        status: Status,
        result: Value,
        timing: Timing,
    },
    /// Text written verbatim, e.g. an edge list.
    Raw(String),
}

impl Report {
    pub fn new(command: &'static str, config: Value, status: Status, result: Value) -> Self {
        Report::Full {
            command,
            config,
            status,
            result,
            timing: Timing::default(),
        }
    }

    pub fn raw(text: String) -> Self {
        Report::Raw(text)
    }

    pub fn set_elapsed(&mut self, d: Duration) {
        if let Report::Full { timing, .. } = self {
            timing.elapsed_ms = (d.as_secs_f64() * 1e6).round() / 1e3;
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Report::Full { status, .. } => match status {
                Status::Ok => 0,
                Status::CheckFailed => 1,
                Status::Budget => 3,
            },
            Report::Raw(_) => 0,
        }
    }

    fn envelope_value(&self) -> Option<Value> {
        let Report::Full {
            command,
            config,
            status,
            result,
            timing,
        } = self
        else {
            return None;
        };
        let env = Envelope {
            schema_version: SCHEMA_VERSION,
            tool: "tqo",
            version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            status: *status,
            pass: *status == Status::Ok,
            budget_exhausted: *status == Status::Budget,
            result,
            timing: *timing,
        };
        Some(serde_json::to_value(env).expect("report serializes"))
    }

    pub fn print(&self, format: Format) {
        let Some(v) = self.envelope_value() else {
            if let Report::Raw(text) = self {
                print!("{text}");
            }
            return;
        };
        match format {
            Format::Json => println!("{}", serde_json::to_string_pretty(&v).expect("serializes")),
            Format::Table => {
                let mut rows = Vec::new();
                flatten("", &v, &mut rows);
                let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, val) in rows {
                    println!("{k:<width$}  {val}");
                }
            }
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let joined: Vec<String> = items.iter().map(scalar).collect();
            out.push((prefix.to_string(), format!("[{}]", joined.join(", "))));
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        _ => out.push((prefix.to_string(), scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
