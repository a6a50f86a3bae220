//! CSV tables with `#` metadata lines, and atomic multi-file writes.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format_float(*x),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<u32> for Cell {
    fn from(i: u32) -> Self {
        Cell::Int(i64::from(i))
    }
}

impl From<u64> for Cell {
    fn from(i: u64) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Text(b.to_string())
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:.16e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub metadata: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            metadata: Vec::new(),
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.push((key.to_string(), value.to_string()));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        // Writing into memory cannot fail.
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory csv");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))
                .expect("in-memory csv");
        }
        let body = w.into_inner().expect("in-memory csv");
        out.push_str(std::str::from_utf8(&body).expect("utf-8 csv"));
        out
    }
}

/// Parsed form of a rendered table.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedCsv {
    pub metadata: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl ParsedCsv {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.header.iter().position(|h| h == name)?;
        self.rows.iter().map(|r| r[idx].parse().ok()).collect()
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

pub fn parse_csv(text: &str) -> Result<ParsedCsv, csv::Error> {
    let metadata = text
        .lines()
        .map_while(|l| l.strip_prefix("# "))
        .filter_map(|rest| rest.split_once(": "))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let header = reader.headers()?.iter().map(str::to_string).collect();
    let rows = reader
        .records()
        .map(|r| r.map(|r| r.iter().map(str::to_string).collect()))
        .collect::<Result<_, _>>()?;
    Ok(ParsedCsv {
        metadata,
        header,
        rows,
    })
}

/// Writes every table to `<dir>/<name>.csv`. All files are staged as
/// temporaries in `dir` and renamed only after every write succeeded;
/// staged files are removed on failure.
pub fn write_tables(dir: &Path, tables: &[Table]) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
    let staged = tables
        .iter()
        .map(|t| {
            let mut f = tempfile::Builder::new()
                .prefix(".macsic-")
                .tempfile_in(dir)?;
            f.write_all(t.render().as_bytes())?;
            f.as_file().sync_all()?;
            Ok(f)
        })
        .collect::<std::io::Result<Vec<_>>>()
        .map_err(|e| CliError::Io(format!("cannot write into {}: {e}", dir.display())))?;
    let mut written = Vec::new();
    for (tmp, t) in staged.into_iter().zip(tables) {
        let dest = dir.join(format!("{}.csv", t.name));
        tmp.persist(&dest)
            .map_err(|e| CliError::Io(format!("cannot rename into {}: {e}", dest.display())))?;
        written.push(dest);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for &x in &[
            0.1,
            1.0 / 3.0,
            -2.5e-300,
            6.02214076e23,
            f64::MIN_POSITIVE,
            0.0,
        ] {
            let s = format_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(format_float(f64::NAN), "nan");
        assert!(format_float(f64::NAN).parse::<f64>().unwrap().is_nan());
    }

    #[test]
    fn render_and_parse() {
        let mut t = Table::new("x", &["a", "b"]);
        t.meta("command", "evolve");
        t.push(vec![Cell::Int(3), Cell::Float(0.25)]);
        let p = parse_csv(&t.render()).unwrap();
        assert_eq!(p.meta("command"), Some("evolve"));
        assert_eq!(p.header, vec!["a", "b"]);
        assert_eq!(p.column("b"), Some(vec![0.25]));
        assert!(parse_csv("a,b\n1\n").is_err());
    }
}
