use crate::config::Format;
use anyhow::{Context, Result};
use serde_json::{json, Map, Value};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(&'static str),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<&'static str> for Cell {
    fn from(v: &'static str) -> Self {
        Cell::Text(v)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            // 17 significant digits round-trip every f64
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => (*s).to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) if v.is_finite() => json!(v),
            Cell::Num(v) => json!(v.to_string()),
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: &[&'static str]) -> Self {
        Self {
            name: name.into(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(
            row.len(),
            self.columns.len(),
            "row width in table {}",
            self.name
        );
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::csv))?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    fn to_json(&self) -> Value {
        json!({
            "columns": self.columns,
            "rows": self.rows.iter().map(|r| r.iter().map(Cell::json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// `<stem>_<table>.<ext>` next to `out`.
pub fn table_path(out: &Path, table: &str) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let ext = out.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    out.with_file_name(format!("{stem}_{table}.{ext}"))
}

fn write_file(path: &Path, body: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating directory {}", dir.display()))?;
    }
    fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}

pub fn json_document(command: &str, meta: Value, tables: &[Table]) -> Value {
    let mut t = Map::new();
    for table in tables {
        t.insert(table.name.clone(), table.to_json());
    }
    json!({ "command": command, "parameters": meta, "tables": t })
}

/// Writes the tables. A single CSV table goes to `out` itself; with several, each goes to its own file.
/// Without `out`, everything goes to stdout, CSV tables separated by `# table: <name>` lines.
/// Returns the files written.
pub fn emit(
    command: &str,
    meta: Value,
    tables: &[Table],
    format: Format,
    out: Option<&Path>,
) -> Result<Vec<PathBuf>> {
    match (format, out) {
        (Format::Json, Some(p)) => {
            let doc = json_document(command, meta, tables);
            write_file(p, &(serde_json::to_string_pretty(&doc)? + "\n"))?;
            Ok(vec![p.to_path_buf()])
        }
        (Format::Json, None) => {
            let doc = json_document(command, meta, tables);
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(Vec::new())
        }
        (Format::Csv, Some(p)) if tables.len() == 1 => {
            write_file(p, &tables[0].to_csv()?)?;
            Ok(vec![p.to_path_buf()])
        }
        (Format::Csv, Some(p)) => {
            let mut written = Vec::new();
            for t in tables {
                let path = table_path(p, &t.name);
                write_file(&path, &t.to_csv()?)?;
                written.push(path);
            }
            Ok(written)
        }
        (Format::Csv, None) => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            for t in tables {
                if tables.len() > 1 {
                    writeln!(lock, "# table: {}", t.name)?;
                }
                lock.write_all(t.to_csv()?.as_bytes())?;
            }
            Ok(Vec::new())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trips_floats() {
        let mut t = Table::new("t", &["a", "b"]);
        let v = 0.1 + 0.2;
        t.push(vec![v.into(), 3usize.into()]);
        let csv = t.to_csv().unwrap();
        let line = csv.lines().nth(1).unwrap();
        let back: f64 = line.split(',').next().unwrap().parse().unwrap();
        assert_eq!(back.to_bits(), v.to_bits());
        assert!(line.ends_with(",3"));
    }

    #[test]
    fn multi_table_paths() {
        assert_eq!(
            table_path(Path::new("dir/run.csv"), "edge"),
            PathBuf::from("dir/run_edge.csv")
        );
        assert_eq!(
            table_path(Path::new("run"), "edge"),
            PathBuf::from("run_edge.csv")
        );
    }
}
