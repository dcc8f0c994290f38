//! Collected check records, CSV tables and the files they are written to.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::error::{io_err, Result};

/// One embedded check. Informational values carry no bound and always pass.
#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub name: String,
    pub value: f64,
    pub bound: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Default)]
pub struct Report {
    pub records: Vec<Record>,
    /// Messages of checks that failed before producing a value.
    pub errors: Vec<String>,
    tables: Vec<(String, String)>,
    figures: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, value: f64, bound: Option<f64>, pass: bool) -> bool {
        self.records.push(Record {
            name: name.into(),
            value,
            bound,
            pass,
        });
        pass
    }

    /// `value <= bound`.
    pub fn le(&mut self, name: impl Into<String>, value: f64, bound: f64) -> bool {
        self.push(name, value, Some(bound), value <= bound)
    }

    /// `value >= bound`.
    pub fn ge(&mut self, name: impl Into<String>, value: f64, bound: f64) -> bool {
        self.push(name, value, Some(bound), value >= bound)
    }

    pub fn info(&mut self, name: impl Into<String>, value: f64) {
        self.push(name, value, None, true);
    }

    /// Records a check that could not be evaluated.
    pub fn fail(&mut self, name: impl Into<String>, message: impl std::fmt::Display) {
        let name = name.into();
        self.errors.push(format!("{name}: {message}"));
        self.push(name, f64::NAN, None, false);
    }

    pub fn table<T: Serialize>(&mut self, name: &str, rows: &[T]) -> Result<()> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in rows {
            w.serialize(r)?;
        }
        let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
        self.tables.push((name.to_string(), String::from_utf8_lossy(&bytes).into_owned()));
        Ok(())
    }

    pub fn figure(&mut self, name: &str, svg: String) {
        self.figures.push((name.to_string(), svg));
    }

    pub fn table_names(&self) -> impl Iterator<Item = &str> {
        self.tables.iter().map(|(n, _)| n.as_str())
    }

    pub fn table_text(&self, name: &str) -> Option<&str> {
        self.tables.iter().find(|(n, _)| n == name).map(|(_, t)| t.as_str())
    }

    pub fn figure_text(&self, name: &str) -> Option<&str> {
        self.figures.iter().find(|(n, _)| n == name).map(|(_, t)| t.as_str())
    }

    pub fn failed(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn all_pass(&self) -> bool {
        self.errors.is_empty() && self.records.iter().all(|r| r.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn jsonl(&self) -> Result<String> {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r)?);
            out.push('\n');
        }
        Ok(out)
    }

    pub fn summary(&self, title: &str) -> String {
        let total = self.records.len();
        let failed: Vec<&Record> = self.failed().collect();
        let mut s = String::new();
        let _ = writeln!(s, "{title}");
        let _ = writeln!(s, "checks: {total}, failed: {}", failed.len());
        for r in &failed {
            let bound = r.bound.map_or("-".to_string(), |b| format!("{b:e}"));
            let _ = writeln!(s, "FAILED {} value={:e} bound={bound}", r.name, r.value);
        }
        for e in &self.errors {
            let _ = writeln!(s, "ERROR {e}");
        }
        if !self.tables.is_empty() {
            let _ = writeln!(s, "tables:");
            for (n, _) in &self.tables {
                let _ = writeln!(s, "  tables/{n}.csv");
            }
        }
        if !self.figures.is_empty() {
            let _ = writeln!(s, "figures:");
            for (n, _) in &self.figures {
                let _ = writeln!(s, "  figures/{n}.svg");
            }
        }
        let _ = writeln!(s, "{}", if self.all_pass() { "status: PASS" } else { "status: FAIL" });
        s
    }

    /// Writes `report.jsonl`, `summary.txt`, `tables/*.csv` and
    /// `figures/*.svg` under `dir`.
    pub fn write(&self, dir: &Path, title: &str) -> Result<()> {
        let write = |path: &Path, text: &str| std::fs::write(path, text).map_err(io_err(path));
        std::fs::create_dir_all(dir).map_err(io_err(dir))?;
        write(&dir.join("report.jsonl"), &self.jsonl()?)?;
        write(&dir.join("summary.txt"), &self.summary(title))?;
        if !self.tables.is_empty() {
            let t = dir.join("tables");
            std::fs::create_dir_all(&t).map_err(io_err(&t))?;
            for (n, text) in &self.tables {
                write(&t.join(format!("{n}.csv")), text)?;
            }
        }
        if !self.figures.is_empty() {
            let f = dir.join("figures");
            std::fs::create_dir_all(&f).map_err(io_err(&f))?;
            for (n, text) in &self.figures {
                write(&f.join(format!("{n}.svg")), text)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        n: usize,
        v: f64,
    }

    #[test]
    fn records_and_tables() {
        let mut r = Report::new();
        assert!(r.le("a", 1.0, 2.0));
        assert!(!r.ge("b", 1.0, 2.0));
        r.info("c", 0.5);
        r.table("t", &[Row { n: 1, v: 0.25 }]).unwrap();
        assert_eq!(r.table_text("t").unwrap(), "n,v\n1,0.25\n");
        assert!(!r.all_pass());
        assert_eq!(r.failed().count(), 1);
        let j = r.jsonl().unwrap();
        assert_eq!(j.lines().next().unwrap(), r#"{"name":"a","value":1.0,"bound":2.0,"pass":true}"#);
        assert!(j.contains(r#""bound":null"#));
        assert!(r.summary("x").contains("FAILED b"));
    }
}
