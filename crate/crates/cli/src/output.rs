//! Reports and their renderings as text, JSON, JSON lines and CSV.

use std::fmt;
use std::str::FromStr;

use nalpha::{Error, Result};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Jsonl,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "jsonl" | "json-lines" => Ok(Format::Jsonl),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Jsonl => "jsonl",
            Format::Csv => "csv",
        })
    }
}

pub type Record = Map<String, Value>;

/// What a command produced: human text, structured records, and the
/// process exit status.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub text: Vec<String>,
    pub records: Vec<Record>,
    pub exit: i32,
}

impl Report {
    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn record(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn render(&self, format: Format) -> Result<String> {
        let mut out = match format {
            Format::Text => self.text.join("\n"),
            Format::Json => {
                let v = match self.records.as_slice() {
                    [one] => Value::Object(one.clone()),
                    many => Value::Array(many.iter().cloned().map(Value::Object).collect()),
                };
                serde_json::to_string_pretty(&v).map_err(|e| Error::Parse(e.to_string()))?
            }
            Format::Jsonl => self
                .records
                .iter()
                .map(|r| serde_json::to_string(r).map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<Vec<_>>>()?
                .join("\n"),
            Format::Csv => to_csv(&self.records)?,
        };
        if !out.ends_with('\n') {
            out.push('\n');
        }
        Ok(out)
    }
}

/// Columns in first-seen order across all records.
fn to_csv(records: &[Record]) -> Result<String> {
    let mut columns: Vec<&str> = Vec::new();
    for r in records {
        for k in r.keys() {
            if !columns.contains(&k.as_str()) {
                columns.push(k);
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(&columns).map_err(io)?;
    for r in records {
        let row: Vec<String> = columns.iter().map(|c| r.get(*c).map(cell).unwrap_or_default()).collect();
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Builds a [`Record`] from `key => value` pairs.
#[macro_export]
macro_rules! record {
    ($($k:expr => $v:expr),* $(,)?) => {{
        let mut r = $crate::output::Record::new();
        $( r.insert(($k).to_string(), serde_json::json!($v)); )*
        r
    }};
}
