use std::fmt::Write as _;
use std::io::Write;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde_json::{Map, Value};

pub const SCHEMA: &str = "hyperoval-lab/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Rows for the CSV rendering; every cell is already formatted.
#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push<I: IntoIterator<Item = String>>(&mut self, row: I) {
        self.rows.push(row.into_iter().collect());
    }
}

/// One subcommand's result in all three renderings. `failure` carries the
/// first failed assertion, if any.
#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub body: Value,
    pub table: Table,
    pub text: String,
    pub failure: Option<String>,
}

impl Report {
    pub fn new(command: &'static str, body: Value) -> Self {
        Self { command, body, table: Table::default(), text: String::new(), failure: None }
    }

    pub fn json(&self) -> Value {
        let mut map = Map::new();
        map.insert("schema".into(), Value::from(SCHEMA));
        map.insert("command".into(), Value::from(self.command));
        match &self.body {
            Value::Object(fields) => map.extend(fields.clone()),
            other => {
                map.insert("result".into(), other.clone());
            }
        }
        if let Some(f) = &self.failure {
            map.insert("failure".into(), Value::from(f.as_str()));
        }
        Value::Object(map)
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::Json => {
                let mut out = serde_json::to_vec_pretty(&self.json())?;
                out.push(b'\n');
                Ok(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.table.header)?;
                for row in &self.table.rows {
                    w.write_record(row)?;
                }
                Ok(w.into_inner().context("flushing csv")?)
            }
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                if let Some(f) = &self.failure {
                    let _ = writeln!(s, "FAILED: {f}");
                }
                Ok(s.into_bytes())
            }
        }
    }

    pub fn emit(&self, format: Format, out: Option<&std::path::Path>) -> Result<()> {
        let bytes = self.render(format)?;
        match out {
            Some(path) => std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?,
            None => std::io::stdout().lock().write_all(&bytes)?,
        }
        Ok(())
    }
}

/// Left-aligned columns separated by two spaces.
pub fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| {
        let mut s = String::new();
        for (c, w) in cells.zip(&widths) {
            let _ = write!(s, "{c:<w$}  ");
        }
        s.trim_end().to_string()
    };
    let mut s = line(&mut header.iter().copied());
    s.push('\n');
    s.push_str(&line(&mut widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str)));
    s.push('\n');
    for r in rows {
        s.push_str(&line(&mut r.iter().map(String::as_str)));
        s.push('\n');
    }
    s
}

pub fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or(String::new(), |x| x.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_comes_first_and_body_is_flattened() {
        let r = Report::new("hyperoval", serde_json::json!({"k": 6, "hyperoval": true}));
        let v = r.json();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["hyperoval"], true);
        assert!(v.get("failure").is_none());
    }

    #[test]
    fn csv_quotes_cells() {
        let mut r = Report::new("x", Value::Null);
        r.table = Table::new(&["a", "b"]);
        r.table.push(["1".to_string(), "p,q".to_string()]);
        let out = String::from_utf8(r.render(Format::Csv).unwrap()).unwrap();
        assert_eq!(out, "a,b\n1,\"p,q\"\n");
    }

    #[test]
    fn text_table_aligns() {
        let t = text_table(&["k", "value"], &[vec!["10".into(), "1".into()]]);
        assert_eq!(t, "k   value\n--  -----\n10  1\n");
    }
}
