//! Versioned reports and their serializations.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::CliError;

pub const SCHEMA: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(CliError::Usage(format!("unsupported format '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

/// A histogram or spectrum, the part of a report that CSV carries.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema: SCHEMA,
            command: command.to_string(),
            inputs: Map::new(),
            outputs: Map::new(),
            checks: Vec::new(),
            table: None,
            elapsed_ms: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.inputs.insert(key.into(), serde_json::to_value(value).expect("serializable"));
        self
    }

    pub fn output(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.outputs.insert(key.into(), serde_json::to_value(value).expect("serializable"));
        self
    }

    pub fn check(&mut self, name: &str, passed: bool) -> &mut Self {
        self.checks.push(Check { name: name.into(), passed });
        self
    }

    pub fn table<K: Serialize, V: Serialize>(
        &mut self,
        columns: [&str; 2],
        rows: impl IntoIterator<Item = (K, V)>,
    ) -> &mut Self {
        let rows = rows
            .into_iter()
            .map(|(k, v)| {
                vec![serde_json::to_value(k).expect("serializable"), serde_json::to_value(v).expect("serializable")]
            })
            .collect();
        self.table = Some(Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows });
        self
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Serializes deterministically: object keys are sorted and nothing but
/// the optional elapsed time depends on the run.
pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::new();
            match &report.table {
                Some(t) => {
                    let _ = writeln!(out, "{}", t.columns.join(","));
                    for row in &t.rows {
                        let cells: Vec<String> = row.iter().map(|v| csv_field(&scalar(v))).collect();
                        let _ = writeln!(out, "{}", cells.join(","));
                    }
                }
                None => {
                    out.push_str("key,value\n");
                    for (k, v) in &report.outputs {
                        let _ = writeln!(out, "{},{}", csv_field(k), csv_field(&scalar(v)));
                    }
                }
            }
            out
        }
        Format::Text => {
            let mut out = format!("{} (schema {})\n", report.command, report.schema);
            for (k, v) in &report.inputs {
                let _ = writeln!(out, "  in  {k}: {}", scalar(v));
            }
            for (k, v) in &report.outputs {
                let _ = writeln!(out, "  out {k}: {}", scalar(v));
            }
            if let Some(t) = &report.table {
                let _ = writeln!(out, "  {}", t.columns.join("\t"));
                for row in &t.rows {
                    let cells: Vec<String> = row.iter().map(scalar).collect();
                    let _ = writeln!(out, "  {}", cells.join("\t"));
                }
            }
            for c in &report.checks {
                let _ = writeln!(out, "  {} {}", if c.passed { "ok  " } else { "FAIL" }, c.name);
            }
            if let Some(ms) = report.elapsed_ms {
                let _ = writeln!(out, "  elapsed {ms:.3} ms");
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("code");
        r.input("q", 2).output("n", 7).output("label", "a,b").check("two weights", true);
        r.table(["weight", "count"], [(0, 1), (4, 42), (6, 21)]);
        r
    }

    #[test]
    fn json_has_schema_and_sorted_keys() {
        let s = emit(&sample(), Format::Json);
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["schema"], "1");
        assert_eq!(v["outputs"]["n"], 7);
        assert!(s.find("\"label\"").unwrap() < s.find("\"n\"").unwrap());
        assert!(v.get("elapsed_ms").is_none());
    }

    #[test]
    fn csv_uses_table() {
        assert_eq!(emit(&sample(), Format::Csv), "weight,count\n0,1\n4,42\n6,21\n");
        let mut r = sample();
        r.table = None;
        assert_eq!(emit(&r, Format::Csv), "key,value\nlabel,\"a,b\"\nn,7\n");
    }

    #[test]
    fn text_marks_failures() {
        let mut r = sample();
        r.check("broken", false);
        let s = emit(&r, Format::Text);
        assert!(s.contains("FAIL broken"));
        assert_eq!(r.failed_checks(), ["broken"]);
    }

    #[test]
    fn format_names() {
        assert_eq!("csv".parse::<Format>().unwrap(), Format::Csv);
        assert!("xml".parse::<Format>().is_err());
    }
}
