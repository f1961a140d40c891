//! Report envelope, result records and serialization.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::config::{Format, RunConfig};
use crate::topology::{ChernReport, Method};

pub const REPORT_SCHEMA: &str = include_str!("../../schema/report.schema.json");

/// One Chern computation for one helicity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChernResult {
    pub h: i32,
    pub method: Method,
    pub chern: Option<i64>,
    pub expected: i64,
    pub raw_sum: Option<f64>,
    pub integer_residual: Option<f64>,
    pub max_plaquette_phase: Option<f64>,
    pub mesh: Option<String>,
    pub samples: Option<usize>,
    pub pass: bool,
    pub error: Option<String>,
}

impl ChernResult {
    pub fn from_report(r: &ChernReport, residual_tol: f64) -> Self {
        let expected = -2 * r.h as i64;
        ChernResult {
            h: r.h,
            method: r.method,
            chern: Some(r.chern),
            expected,
            raw_sum: Some(r.raw_sum),
            integer_residual: Some(r.integer_residual),
            max_plaquette_phase: Some(r.max_plaquette_phase),
            mesh: r.mesh.clone(),
            samples: r.samples,
            pass: r.chern == expected && r.integer_residual < residual_tol,
            error: None,
        }
    }

    pub fn failed(h: i32, method: Method, mesh: Option<String>, samples: Option<usize>, error: String) -> Self {
        ChernResult {
            h,
            method,
            chern: None,
            expected: -2 * h as i64,
            raw_sum: None,
            integer_residual: None,
            max_plaquette_phase: None,
            mesh,
            samples,
            pass: false,
            error: Some(error),
        }
    }
}

/// Worst case of one property over a suite's random samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub suite: String,
    pub check: String,
    pub cases: usize,
    /// Largest defect seen.
    pub worst: f64,
    pub tolerance: f64,
    /// Inputs of the worst case.
    pub inputs: String,
    pub pass: bool,
}

/// One rung of a convergence ladder.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RungResult {
    pub h: i32,
    pub mesh: String,
    pub admissible: bool,
    pub chern: Option<i64>,
    pub raw_sum: Option<f64>,
    pub integer_residual: Option<f64>,
    pub uniformity_error: Option<f64>,
    pub max_plaquette_phase: Option<f64>,
    pub pass: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResultRecord {
    Chern(ChernResult),
    Check(CheckResult),
    Rung(RungResult),
}

impl ResultRecord {
    pub fn pass(&self) -> bool {
        match self {
            ResultRecord::Chern(r) => r.pass,
            ResultRecord::Check(r) => r.pass,
            ResultRecord::Rung(r) => r.pass,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub version: String,
    pub config: RunConfig,
    /// Unix seconds, recorded only on request so that identical runs give
    /// identical bytes.
    pub timestamp: Option<u64>,
    pub results: Vec<ResultRecord>,
    pub warnings: Vec<String>,
    pub summary: Summary,
}

impl ReportEnvelope {
    pub fn new(config: RunConfig, results: Vec<ResultRecord>, warnings: Vec<String>) -> Self {
        let passed = results.iter().filter(|r| r.pass()).count();
        let failed = results.len() - passed;
        ReportEnvelope {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            timestamp: None,
            results,
            warnings,
            summary: Summary { passed, failed },
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Result rows as CSV, one table per record kind present.
    pub fn to_csv(&self) -> csv::Result<String> {
        let mut out = Vec::new();
        let chern: Vec<_> = self
            .results
            .iter()
            .filter_map(|r| match r {
                ResultRecord::Chern(c) => Some(c),
                _ => None,
            })
            .collect();
        let rungs: Vec<_> = self
            .results
            .iter()
            .filter_map(|r| match r {
                ResultRecord::Rung(c) => Some(c),
                _ => None,
            })
            .collect();
        let checks: Vec<_> = self
            .results
            .iter()
            .filter_map(|r| match r {
                ResultRecord::Check(c) => Some(c),
                _ => None,
            })
            .collect();
        write_table(&mut out, &chern)?;
        write_table(&mut out, &rungs)?;
        write_table(&mut out, &checks)?;
        Ok(String::from_utf8(out).expect("csv is utf-8"))
    }

    pub fn render(&self, format: Format) -> csv::Result<String> {
        match format {
            Format::Json => Ok(self.to_json()),
            Format::Csv => self.to_csv(),
        }
    }
}

fn write_table<T: Serialize>(out: &mut Vec<u8>, rows: &[&T]) -> csv::Result<()> {
    if rows.is_empty() {
        return Ok(());
    }
    if !out.is_empty() {
        out.push(b'\n');
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    out.write_all(&w.into_inner().map_err(|e| e.into_error())?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_results_have_no_numbers() {
        let r = ChernResult::failed(3, Method::ClutchingWinding, None, Some(8), "too few".into());
        assert_eq!(r.expected, -6);
        assert!(!r.pass && r.chern.is_none());
    }

    #[test]
    fn summary_counts() {
        let cfg = crate::cli::tests_support::chern_config();
        let ok = ChernResult::from_report(&crate::topology::chern_clutching(1, 64).unwrap(), 1e-6);
        let bad = ChernResult::failed(1, Method::ClutchingWinding, None, None, "x".into());
        let env = ReportEnvelope::new(cfg, vec![ResultRecord::Chern(ok), ResultRecord::Chern(bad)], vec![]);
        assert_eq!(env.summary, Summary { passed: 1, failed: 1 });
        assert!(!env.all_passed());
        let csv = env.to_csv().unwrap();
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.starts_with("h,method,chern,expected"));
    }
}
