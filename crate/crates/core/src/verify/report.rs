use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::write_atomic;
use crate::norms::Exponent;
use crate::verify::ensemble::Ensemble;
use crate::weights::Weight;

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trial {
    pub grid_n: usize,
    pub trial: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSummary {
    pub grid_n: usize,
    pub trials: usize,
    pub max_ratio: f64,
    pub min_ratio: f64,
}

/// `max ratio at to_n / max ratio at from_n` for consecutive grid sizes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stability {
    pub from_n: usize,
    pub to_n: usize,
    pub quotient: f64,
}

/// Per-trial ratios of an inequality, with enough metadata to reproduce the
/// run. The maxima are empirical constants: lower bounds, not operator norms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub schema: u32,
    pub experiment: String,
    pub quantity: String,
    pub exponents: BTreeMap<String, Exponent>,
    pub admissible: bool,
    pub exploratory: bool,
    pub failed_conditions: Vec<String>,
    pub weights: BTreeMap<String, Weight>,
    pub windows: BTreeMap<String, String>,
    pub seed: u64,
    pub ensembles: BTreeMap<String, Ensemble>,
    pub grids: Vec<usize>,
    pub trials: Vec<Trial>,
    pub summary: Vec<GridSummary>,
    pub stability: Vec<Stability>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl ReportFormat {
    /// `.json` selects JSON; anything else is CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => ReportFormat::Json,
            _ => ReportFormat::Csv,
        }
    }
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::Format(format!("unknown report format {other:?}"))),
        }
    }
}

impl RatioReport {
    /// Fills `summary` and `stability` from `trials` and `grids`.
    pub(crate) fn finish(&mut self) {
        self.summary = self
            .grids
            .iter()
            .map(|&n| {
                let ratios: Vec<f64> = self.trials.iter().filter(|t| t.grid_n == n).map(|t| t.ratio).collect();
                GridSummary {
                    grid_n: n,
                    trials: ratios.len(),
                    max_ratio: ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
                    min_ratio: ratios.iter().cloned().fold(f64::INFINITY, f64::min),
                }
            })
            .collect();
        self.stability = self
            .summary
            .windows(2)
            .map(|w| Stability { from_n: w[0].grid_n, to_n: w[1].grid_n, quotient: w[1].max_ratio / w[0].max_ratio })
            .collect();
    }

    pub fn max_ratio(&self, grid_n: usize) -> Option<f64> {
        self.summary.iter().find(|s| s.grid_n == grid_n).map(|s| s.max_ratio)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let r: RatioReport = serde_json::from_str(text)?;
        if r.schema != REPORT_SCHEMA {
            return Err(Error::Format(format!("unsupported report schema {}", r.schema)));
        }
        Ok(r)
    }

    /// Columns `grid_n,trial,lhs,rhs,ratio`; floats are written in a form that
    /// parses back to the same value.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["grid_n", "trial", "lhs", "rhs", "ratio"]).map_err(csv_err)?;
        for t in &self.trials {
            w.write_record([
                t.grid_n.to_string(),
                t.trial.to_string(),
                format!("{:?}", t.lhs),
                format!("{:?}", t.rhs),
                format!("{:?}", t.ratio),
            ])
            .map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Format(e.to_string())
}

/// Writes the report atomically.
pub fn emit_report(report: &RatioReport, path: &Path, format: ReportFormat) -> Result<()> {
    let text = match format {
        ReportFormat::Csv => report.to_csv()?,
        ReportFormat::Json => report.to_json()?,
    };
    write_atomic(path, text.as_bytes())
}
