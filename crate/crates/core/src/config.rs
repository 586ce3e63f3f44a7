//! Run configuration: a JSON file, overridden by command-line flags and
//! the `JCH_OUTPUT_DIR` environment variable.
//!
//! ```json
//! {
//!   "model": {"n_sites": 8, "omega_a": 1.0, "omega_b": 1.0, "kappa": 1.0, "lambda": 0.7},
//!   "tolerances": {"spectral": 1e-10, "residual": 1e-12},
//!   "output": {"directory": "out", "formats": ["json", "csv"]},
//!   "sweep": {"kappa": [0.5, 1.0], "lambda": [0.3, 0.7], "k": [0.0, 1.0], "j": [1, 2]}
//! }
//! ```
//! Every section is optional; missing sections take the defaults above
//! (without a sweep).

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{JchError, Result};
use crate::model::ModelParams;
use crate::verify::Tolerances;

pub const OUTPUT_DIR_ENV: &str = "JCH_OUTPUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ToleranceConfig {
    pub spectral: f64,
    pub residual: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self { spectral: 1e-10, residual: 1e-12 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OutputConfig {
    pub directory: PathBuf,
    pub formats: Vec<Format>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { directory: PathBuf::from("out"), formats: vec![Format::Json, Format::Csv] }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepConfig {
    pub kappa: Option<Vec<f64>>,
    pub lambda: Option<Vec<f64>>,
    pub k: Option<Vec<f64>>,
    pub j: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub model: ModelParams,
    pub tolerances: ToleranceConfig,
    pub output: OutputConfig,
    pub sweep: Option<SweepConfig>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            model: ModelParams::resonant(8, 1.0, 0.7),
            tolerances: ToleranceConfig::default(),
            output: OutputConfig::default(),
            sweep: None,
        }
    }
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| JchError::Configuration(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        let t = self.tolerances;
        if !(t.spectral > 0.0 && t.residual > 0.0) {
            return Err(JchError::Configuration("tolerances must be positive".into()));
        }
        if self.output.formats.is_empty() {
            return Err(JchError::Configuration("output.formats must name json and/or csv".into()));
        }
        if let Some(s) = &self.sweep {
            let empty = [
                ("kappa", s.kappa.as_ref().map(Vec::len)),
                ("lambda", s.lambda.as_ref().map(Vec::len)),
                ("k", s.k.as_ref().map(Vec::len)),
                ("j", s.j.as_ref().map(Vec::len)),
            ];
            if let Some((name, _)) = empty.iter().find(|(_, n)| *n == Some(0)) {
                return Err(JchError::Configuration(format!("sweep.{name} is present but empty")));
            }
        }
        Ok(())
    }

    pub fn wants(&self, f: Format) -> bool {
        self.output.formats.contains(&f)
    }

    /// Verification bounds: the configured spectral and residual tolerances
    /// on top of the fixed ones.
    pub fn verify_tolerances(&self) -> Tolerances {
        Tolerances { spectral: self.tolerances.spectral, residual: self.tolerances.residual, ..Tolerances::default() }
    }

    /// (κ, λ) points: the sweep grid if given, else the model point.
    pub fn coupling_points(&self) -> Vec<ModelParams> {
        let sweep = self.sweep.clone().unwrap_or_default();
        let kappas = sweep.kappa.unwrap_or_else(|| vec![self.model.kappa]);
        let lambdas = sweep.lambda.unwrap_or_else(|| vec![self.model.lambda]);
        kappas.iter().flat_map(|&k| lambdas.iter().map(move |&l| self.model.with_kappa_lambda(k, l))).collect()
    }

    pub fn j_filter(&self) -> Option<&[usize]> {
        self.sweep.as_ref().and_then(|s| s.j.as_deref())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_file_takes_defaults() {
        let c: RunConfig = serde_json::from_str(
            r#"{"model": {"n_sites": 6, "omega_a": 1, "omega_b": 1, "kappa": 0.5, "lambda": 0.3}}"#,
        )
        .unwrap();
        assert_eq!(c.tolerances, ToleranceConfig::default());
        assert_eq!(c.output.formats, vec![Format::Json, Format::Csv]);
        c.validate().unwrap();
        assert_eq!(c.coupling_points().len(), 1);
    }

    #[test]
    fn rejects_bad_values() {
        let mut c = RunConfig::default();
        c.tolerances.residual = 0.0;
        assert!(c.validate().is_err());
        let c =
            RunConfig { sweep: Some(SweepConfig { kappa: Some(vec![]), ..Default::default() }), ..Default::default() };
        assert!(c.validate().is_err());
        let bad: std::result::Result<RunConfig, _> = serde_json::from_str(r#"{"output": {"formats": ["xml"]}}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn sweep_grid() {
        let sweep = SweepConfig { kappa: Some(vec![0.5, 1.0]), lambda: Some(vec![0.3, 0.7]), ..Default::default() };
        let c = RunConfig { sweep: Some(sweep), ..Default::default() };
        let pts = c.coupling_points();
        assert_eq!(pts.len(), 4);
        assert_eq!((pts[1].kappa, pts[1].lambda), (0.5, 0.7));
    }
}
