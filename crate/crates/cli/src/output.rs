//! Rendering of command results as a table, JSON or CSV.

use serde_json::{Map, Value};

use explicit_core::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

/// Rows of a result plus their human-readable rendering.
pub struct Output {
    pub rows: Vec<Map<String, Value>>,
    pub table: String,
}

impl Output {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Table => Ok(self.table.clone()),
            Format::Json => {
                let v = Value::Array(self.rows.iter().cloned().map(Value::Object).collect());
                let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::Io(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self.csv(),
        }
    }

    fn csv(&self) -> Result<String> {
        let mut header: Vec<&str> = Vec::new();
        for row in &self.rows {
            for k in row.keys() {
                if !header.contains(&k.as_str()) {
                    header.push(k);
                }
            }
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&header)?;
        for row in &self.rows {
            let rec: Vec<String> = header
                .iter()
                .map(|k| match row.get(*k) {
                    None | Some(Value::Null) => String::new(),
                    Some(Value::String(s)) => s.clone(),
                    Some(v) => v.to_string(),
                })
                .collect();
            w.write_record(&rec)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }
}

/// Converts a serializable value into a JSON object row.
pub fn row<T: serde::Serialize>(value: &T) -> Result<Map<String, Value>> {
    match serde_json::to_value(value).map_err(|e| Error::Io(e.to_string()))? {
        Value::Object(m) => Ok(m),
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            Ok(m)
        }
    }
}
