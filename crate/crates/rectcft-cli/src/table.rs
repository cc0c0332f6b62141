//! The CSV schema shared by predict and simulate: `# key: value`
//! metadata lines, one header row, then numeric rows printed with 17
//! significant digits.

use std::io::Write;
use std::path::Path;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

pub fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { meta: Vec::new(), columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn set_meta(&mut self, key: &str, value: impl ToString) {
        let value = value.to_string();
        match self.meta.iter_mut().find(|(k, _)| k == key) {
            Some(e) => e.1 = value,
            None => self.meta.push((key.to_string(), value)),
        }
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn meta_f64(&self, key: &str) -> Option<f64> {
        self.meta(key).and_then(|v| v.parse().ok())
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (k, v) in &self.meta {
            writeln!(out, "# {k}: {v}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r.iter().map(|v| fmt_real(*v)))?;
        }
        w.flush()
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        let f = std::fs::File::create(path).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e })?;
        self.write_to(std::io::BufWriter::new(f)).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e })
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let bad = |msg: String| CliError::Table { path: path.to_path_buf(), msg };
        let mut meta = Vec::new();
        let mut body = 0;
        for line in text.lines() {
            let Some(rest) = line.strip_prefix('#') else { break };
            body += line.len() + 1;
            let (k, v) = rest.split_once(':').ok_or_else(|| bad(format!("metadata line without ':': {line}")))?;
            meta.push((k.trim().to_string(), v.trim().to_string()));
        }
        let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(&text.as_bytes()[body.min(text.len())..]);
        let columns: Vec<String> =
            rd.headers().map_err(|e| bad(e.to_string()))?.iter().map(|s| s.trim().to_string()).collect();
        if columns.is_empty() || columns.iter().any(|c| c.is_empty()) {
            return Err(bad("missing or empty header".into()));
        }
        let mut rows = Vec::new();
        for (i, rec) in rd.records().enumerate() {
            let rec = rec.map_err(|e| bad(e.to_string()))?;
            let row = rec
                .iter()
                .map(|s| s.trim().parse::<f64>().map_err(|_| bad(format!("row {}: not a number: {s:?}", i + 1))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Ok(Table { meta, columns, rows })
    }

    pub fn read_file(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e })?;
        Self::parse(&text, path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_is_lossless() {
        let mut t = Table::new(&["x", "v"]);
        t.set_meta("kind", "theory");
        t.set_meta("config", "{\"a\":1}");
        t.push(vec![0.1, 1.0 / 3.0]);
        t.push(vec![1e-300, -2.5e10]);
        let s = t.to_csv_string();
        let back = Table::parse(&s, Path::new("mem")).unwrap();
        assert_eq!(back, t);
    }
}
