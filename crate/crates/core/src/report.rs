//! Deterministic report files: numbers carry 15 significant digits.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;
use crate::linalg::CMatrix;

/// `x` printed with 15 significant digits.
pub fn fmt_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.14e}")
    } else {
        x.to_string()
    }
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

fn round15(x: f64) -> f64 {
    fmt_num(x).parse().unwrap_or(x)
}

/// Rounds every float in a JSON tree to 15 significant digits.
pub fn normalize_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            serde_json::Number::from_f64(round15(x)).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(normalize_numbers).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, normalize_numbers(v))).collect()),
        other => other,
    }
}

/// Dense complex matrix as `{"dim": [rows, cols], "entries": [[r, c, re, im], ...]}`
/// listing entries with magnitude above 1e-15.
pub fn matrix_json(m: &CMatrix) -> Value {
    let mut entries = Vec::new();
    for c in 0..m.ncols() {
        for r in 0..m.nrows() {
            let z = m[(r, c)];
            if z.norm() > 1e-15 {
                entries.push(serde_json::json!([r, c, z.re, z.im]));
            }
        }
    }
    entries.sort_by_key(|e| (e[0].as_u64(), e[1].as_u64()));
    serde_json::json!({"dim": [m.nrows(), m.ncols()], "entries": entries})
}

pub struct ReportWriter {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl ReportWriter {
    pub fn new(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Self { dir: dir.to_path_buf(), written: Vec::new() })
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }

    pub fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let v = normalize_numbers(serde_json::to_value(value)?);
        let path = self.dir.join(name);
        fs::write(&path, serde_json::to_string_pretty(&v)? + "\n")?;
        self.written.push(path);
        Ok(())
    }

    pub fn csv(&mut self, name: &str, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
        let path = self.dir.join(name);
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        w.flush()?;
        self.written.push(path);
        Ok(())
    }

    /// One eigenvalue per line, ascending, no header.
    pub fn eigenvalues(&mut self, name: &str, values: &[f64]) -> Result<()> {
        let path = self.dir.join(name);
        let mut text = String::with_capacity(values.len() * 24);
        for v in values {
            text.push_str(&fmt_num(*v));
            text.push('\n');
        }
        fs::write(&path, text)?;
        self.written.push(path);
        Ok(())
    }
}
