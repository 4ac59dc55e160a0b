//! Result records and the three output formats.

use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    JsonLines,
    Csv,
}

/// One result row: `{kind, inputs, value, provenance}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub kind: String,
    pub inputs: Map<String, Value>,
    pub value: Value,
    pub provenance: Map<String, Value>,
}

impl Record {
    pub fn new(kind: &str, inputs: Value, value: Value, provenance: Value) -> Self {
        let obj = |v: Value| match v {
            Value::Object(m) => m,
            Value::Null => Map::new(),
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                m
            }
        };
        Record { kind: kind.into(), inputs: obj(inputs), value, provenance: obj(provenance) }
    }
}

/// Integers that may not fit in a JSON number are emitted as strings.
pub fn big(v: u128) -> Value {
    u64::try_from(v).map(Value::from).unwrap_or_else(|_| Value::String(v.to_string()))
}

pub fn int(v: i128) -> Value {
    i64::try_from(v).map(Value::from).unwrap_or_else(|_| Value::String(v.to_string()))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn kv(m: &Map<String, Value>) -> String {
    m.iter().map(|(k, v)| format!("{k}={}", scalar(v))).collect::<Vec<_>>().join(" ")
}

/// Keys are emitted in sorted order at every level, so any JSON parser's
/// re-emission of a line is byte-identical.
pub fn json_line(r: &Record) -> Result<String, CliError> {
    Ok(serde_json::to_string(&serde_json::to_value(r)?)?)
}

pub fn emit(records: &[Record], format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::JsonLines => {
            for r in records {
                writeln!(out, "{}", json_line(r)?)?;
            }
        }
        Format::Text => {
            for r in records {
                let prov = kv(&r.provenance);
                let sep = if prov.is_empty() { "" } else { "  # " };
                writeln!(out, "{} {}: {}{sep}{prov}", r.kind, kv(&r.inputs), scalar(&r.value))?;
            }
        }
        Format::Csv => {
            if records.is_empty() {
                return Ok(());
            }
            // union of keys, in order of first appearance
            let mut inputs: Vec<&String> = Vec::new();
            let mut prov: Vec<&String> = Vec::new();
            for r in records {
                for k in r.inputs.keys() {
                    if !inputs.contains(&k) {
                        inputs.push(k);
                    }
                }
                for k in r.provenance.keys() {
                    if !prov.contains(&k) {
                        prov.push(k);
                    }
                }
            }
            let mut w = csv::Writer::from_writer(out);
            let mut header = vec!["kind".to_string()];
            header.extend(inputs.iter().map(|k| k.to_string()));
            header.push("value".into());
            header.extend(prov.iter().map(|k| format!("provenance.{k}")));
            w.write_record(&header)?;
            for r in records {
                let mut row = vec![r.kind.clone()];
                row.extend(inputs.iter().map(|&k| r.inputs.get(k).map(scalar).unwrap_or_default()));
                row.push(scalar(&r.value));
                row.extend(prov.iter().map(|&k| r.provenance.get(k).map(scalar).unwrap_or_default()));
                w.write_record(&row)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn json_line_roundtrip() {
        let r = Record::new("period", json!({"q": 2, "pair": "u4xu2"}), json!(-1), json!({"matches": true}));
        let line = json_line(&r).unwrap();
        let back: Record = serde_json::from_str(&line).unwrap();
        assert_eq!(json_line(&back).unwrap(), line);
    }

    #[test]
    fn csv_quotes_lists() {
        let r = Record::new("x", json!({"torus": "3,1;1,1"}), json!([1, 2]), Value::Null);
        let mut buf = Vec::new();
        emit(&[r], Format::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "kind,torus,value\nx,\"3,1;1,1\",\"[1,2]\"\n");
    }
}
