//! Result tables, their CSV/JSON encodings and the run manifest.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Format, ScenarioConfig};
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            // 17 significant digits: round-trips every f64
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, CliError> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.columns).map_err(io_csv)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).map_err(io_csv)?;
        }
        w.into_inner().map_err(|e| CliError::Io(e.to_string()))
    }

    pub fn to_json(&self, scenario: &str) -> Vec<u8> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
            .collect();
        let doc = json!({
            "scenario": scenario,
            "columns": self.columns,
            "rows": rows,
        });
        let mut bytes = serde_json::to_vec_pretty(&doc).expect("table serialises");
        bytes.push(b'\n');
        bytes
    }
}

fn io_csv(e: csv::Error) -> CliError {
    CliError::Io(e.to_string())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub scenario: String,
    pub config_hash: String,
    pub seed: u64,
    pub tool_version: String,
    pub timestamp: String,
    pub row_count: usize,
    pub data_file: String,
    pub format: Format,
    pub columns: Vec<&'static str>,
    pub config: ScenarioConfig,
}

/// RFC 3339 UTC time, or `SOURCE_DATE_EPOCH` when set so that manifests
/// can be made reproducible too.
fn timestamp() -> String {
    let from_env = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.parse::<i64>().ok())
        .and_then(|secs| chrono::DateTime::from_timestamp(secs, 0));
    from_env
        .unwrap_or_else(chrono::Utc::now)
        .to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

/// Paths written by [`write_outputs`].
#[derive(Debug, Clone)]
pub struct Written {
    pub data: PathBuf,
    pub manifest: PathBuf,
    pub rows: usize,
}

pub fn write_outputs(cfg: &ScenarioConfig, table: &Table) -> Result<Written, CliError> {
    let dir: &Path = &cfg.out_dir;
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
    let name = cfg.scenario.name();
    let data_name = format!("{name}.{}", cfg.format.extension());
    let data_path = dir.join(&data_name);
    let bytes = match cfg.format {
        Format::Csv => table.to_csv()?,
        Format::Json => table.to_json(name),
    };
    write_file(&data_path, &bytes)?;

    let manifest = RunManifest {
        scenario: name.to_string(),
        config_hash: cfg.hash(),
        seed: cfg.seed,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: timestamp(),
        row_count: table.rows.len(),
        data_file: data_name,
        format: cfg.format,
        columns: table.columns.clone(),
        config: cfg.clone(),
    };
    let manifest_path = dir.join(format!("{name}.manifest.json"));
    let mut mbytes = serde_json::to_vec_pretty(&manifest).expect("manifest serialises");
    mbytes.push(b'\n');
    write_file(&manifest_path, &mbytes)?;
    Ok(Written {
        data: data_path,
        manifest: manifest_path,
        rows: table.rows.len(),
    })
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let mut f = fs::File::create(path).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    f.write_all(bytes)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["kind", "n", "x"]);
        t.push(vec!["a".into(), 3usize.into(), 0.1.into()]);
        t.push(vec!["b,c".into(), Cell::Empty, f64::NAN.into()]);
        t
    }

    #[test]
    fn csv_encoding() {
        let text = String::from_utf8(sample().to_csv().unwrap()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "kind,n,x");
        assert_eq!(lines[1], "a,3,1.0000000000000001e-1");
        assert_eq!(lines[2], "\"b,c\",,NaN");
        let back: f64 = "1.0000000000000001e-1".parse().unwrap();
        assert_eq!(back, 0.1);
    }

    #[test]
    fn json_encoding() {
        let v: Value = serde_json::from_slice(&sample().to_json("demo")).unwrap();
        assert_eq!(v["columns"][2], "x");
        assert_eq!(v["rows"][0][2], 0.1);
        assert!(v["rows"][1][1].is_null() && v["rows"][1][2].is_null());
    }
}
