//! Tabular command output rendered as CSV or JSON.

use std::io::Write;
use std::path::Path;

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Rows sharing one ordered set of columns.
#[derive(Debug, Default)]
pub struct Records {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Records {
    pub fn new(columns: &[&str]) -> Self {
        Records {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns)?;
                for r in &self.rows {
                    w.write_record(r.iter().map(cell_text))?;
                }
                Ok(String::from_utf8(w.into_inner()?)?)
            }
            Format::Json => {
                let objects: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let m: Map<String, Value> = self.columns.iter().cloned().zip(r.iter().cloned()).collect();
                        Value::Object(m)
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&objects)?;
                s.push('\n');
                Ok(s)
            }
        }
    }
}

/// Full-precision CSV text for one value. Nested objects become `k=v;k=v`.
fn cell_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| format!("{k}={}", cell_text(v)))
            .collect::<Vec<_>>()
            .join(";"),
        Value::Array(a) => a.iter().map(cell_text).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

/// Writes to `out`, or to stdout when no path is given.
pub fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

pub fn opt(x: Option<f64>) -> Value {
    x.map(num).unwrap_or(Value::Null)
}

/// Parameter names paired with values, in order.
pub fn named(names: &[String], values: &[f64]) -> Value {
    Value::Object(names.iter().cloned().zip(values.iter().map(|&v| num(v))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json_share_fields() {
        let mut r = Records::new(&["model", "value", "missing"]);
        r.push(vec![Value::from("NWTE"), num(0.1), Value::Null]);
        let csv = r.render(Format::Csv).unwrap();
        assert_eq!(csv, "model,value,missing\nNWTE,0.1,\n");
        let json: Value = serde_json::from_str(&r.render(Format::Json).unwrap()).unwrap();
        assert_eq!(json[0]["model"], "NWTE");
        assert!(json[0]["missing"].is_null());
    }

    #[test]
    fn nested_values_flatten_in_csv() {
        let v = named(&["a".into(), "b".into()], &[1.5, 2.0]);
        assert_eq!(cell_text(&v), "a=1.5;b=2.0");
    }
}
