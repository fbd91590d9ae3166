//! Uniform result records and their CSV / JSON rendering.
//!
//! CSV output starts with a schema comment `# polyineq <command> v1`, then a
//! header row. JSON output carries the same schema string, the column list and
//! one object per row with exactly the CSV fields. Every computed number is
//! accompanied by a `<name>_err` column holding its tolerance or error
//! estimate.

use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// A named scalar with its error estimate and witness data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub value: f64,
    pub error: f64,
    pub witness: Map<String, Value>,
}

impl BoundReport {
    pub fn new(name: impl Into<String>, value: f64, error: f64) -> Self {
        BoundReport {
            name: name.into(),
            value,
            error,
            witness: Map::new(),
        }
    }

    pub fn with(mut self, key: &str, value: Value) -> Self {
        self.witness.insert(key.to_string(), value);
        self
    }

    pub fn get_f64(&self, key: &str) -> Option<f64> {
        self.witness.get(key).and_then(Value::as_f64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Table {
            command: command.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    /// One row per report: `name, value, value_err`, then the union of the
    /// witness keys in first-seen order (missing entries are empty).
    pub fn from_reports(command: &str, reports: &[BoundReport]) -> Self {
        let mut columns = vec!["name".to_string(), "value".to_string(), "value_err".to_string()];
        for r in reports {
            for k in r.witness.keys() {
                if !columns.contains(k) {
                    columns.push(k.clone());
                }
            }
        }
        let rows = reports
            .iter()
            .map(|r| {
                let mut row = vec![Value::from(r.name.clone()), num(r.value), num(r.error)];
                for c in &columns[3..] {
                    row.push(r.witness.get(c).cloned().unwrap_or(Value::Null));
                }
                row
            })
            .collect();
        Table {
            command: command.to_string(),
            columns,
            rows,
        }
    }

    pub fn schema(&self) -> String {
        format!("polyineq {} v{SCHEMA_VERSION}", self.command)
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("# {}\n", self.schema());
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(csv_cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut m = Map::new();
                for (c, v) in self.columns.iter().zip(row) {
                    m.insert(c.clone(), v.clone());
                }
                Value::Object(m)
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("schema".into(), Value::from(self.schema()));
        doc.insert("columns".into(), Value::from(self.columns.clone()));
        doc.insert("rows".into(), Value::Array(rows));
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable");
        s.push('\n');
        s
    }
}

/// JSON number, or the string `"inf"`/`"nan"` for non-finite values.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or_else(|| Value::from(if x.is_nan() { "nan" } else if x > 0.0 { "inf" } else { "-inf" }))
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.clone()
            }
        }
        other => {
            let s = other.to_string();
            if s.contains(',') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_and_json_carry_the_same_fields() {
        let reports = vec![
            BoundReport::new("alpha", 0.5, 1e-9).with("d", json!(2)),
            BoundReport::new("alpha", 2.0, 1e-9).with("tag", json!("a,b")),
        ];
        let t = Table::from_reports("alpha", &reports);
        let csv = t.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("# polyineq alpha v1"));
        assert_eq!(lines.next(), Some("name,value,value_err,d,tag"));
        assert_eq!(lines.next(), Some("alpha,0.5,1e-9,2,"));
        assert_eq!(lines.next(), Some("alpha,2.0,1e-9,,\"a,b\""));
        let doc: Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(doc["rows"][0]["d"], json!(2));
        assert_eq!(doc["columns"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn non_finite_numbers_are_strings() {
        assert_eq!(num(f64::INFINITY), json!("inf"));
        assert_eq!(num(1.5), json!(1.5));
    }
}
