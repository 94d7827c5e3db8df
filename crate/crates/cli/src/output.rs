//! Deterministic CSV and summary writers.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{CliError, Result};

/// 17 significant digits, so every `f64` round-trips.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

pub struct Output {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl Output {
    pub fn create(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
        Ok(Output { dir: dir.to_path_buf(), written: Vec::new() })
    }

    fn write(&mut self, name: &str, body: &str) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, body).map_err(|source| CliError::Io { path: path.clone(), source })?;
        self.written.push(path);
        Ok(())
    }

    /// Numeric table.
    pub fn csv(&mut self, name: &str, header: &[String], rows: &[Vec<f64>]) -> Result<()> {
        let text: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|x| num(*x)).collect()).collect();
        self.csv_text(name, header, &text)
    }

    pub fn csv_text(&mut self, name: &str, header: &[String], rows: &[Vec<String>]) -> Result<()> {
        let mut body = header.join(",");
        body.push('\n');
        for r in rows {
            body.push_str(&r.join(","));
            body.push('\n');
        }
        self.write(name, &body)
    }

    pub fn summary(&mut self, s: &Summary) -> Result<()> {
        self.write("summary.toml", &s.body)
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }
}

pub fn header(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|c| c.to_string()).collect()
}

/// TOML summary built line by line so key order is fixed.
#[derive(Default)]
pub struct Summary {
    body: String,
}

impl Summary {
    pub fn new(experiment: &str) -> Self {
        let mut s = Summary::default();
        s.text("experiment", experiment);
        s
    }

    pub fn section(&mut self, name: &str) {
        let _ = write!(self.body, "\n[{name}]\n");
    }

    pub fn value(&mut self, key: &str, x: f64) {
        let _ = writeln!(self.body, "{key} = {}", num(x));
    }

    pub fn int(&mut self, key: &str, x: usize) {
        let _ = writeln!(self.body, "{key} = {x}");
    }

    pub fn flag(&mut self, key: &str, b: bool) {
        let _ = writeln!(self.body, "{key} = {b}");
    }

    pub fn text(&mut self, key: &str, s: &str) {
        let _ = writeln!(self.body, "{key} = {}", toml::Value::String(s.to_string()));
    }

    pub fn list(&mut self, key: &str, xs: &[f64]) {
        let items: Vec<String> = xs.iter().map(|x| num(*x)).collect();
        let _ = writeln!(self.body, "{key} = [{}]", items.join(", "));
    }

    pub fn warnings(&mut self, ws: &[springs_core::Warning]) {
        let items: Vec<String> = ws.iter().map(|w| toml::Value::String(format!("{w:?}")).to_string()).collect();
        let _ = writeln!(self.body, "warnings = [{}]", items.join(", "));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [0.0, 1.0 / 3.0, -2.5e-300, 6.02214076e23, f64::MIN_POSITIVE] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(1.0), "1.0000000000000000e0");
        assert_eq!(num(f64::NAN), "nan");
    }

    #[test]
    fn summary_is_toml() {
        let mut s = Summary::new("x");
        s.section("a.b");
        s.value("u", 0.25);
        s.value("bad", f64::NAN);
        s.list("l", &[1.0, 2.0]);
        s.flag("ok", true);
        s.warnings(&[springs_core::Warning::UndefinedPhase]);
        let t: toml::Table = s.body.parse().unwrap();
        assert_eq!(t["a"]["b"]["u"].as_float(), Some(0.25));
    }
}
