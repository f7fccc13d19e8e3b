//! JSON result records (schema 1).
//!
//! Every float in a record is finite: non-finite quantities are mapped to
//! `None`, so that `parse(format(r)) == r` holds exactly.

use serde::{Deserialize, Serialize};

use pwhit_core::gz::SuiteReport;
use pwhit_core::{LogComplex, MbEstimate, SeriesEstimate, SpectralData};

pub const SCHEMA_VERSION: u32 = 1;

/// Values are emitted as re/im only while `|log_mag|` is below this.
pub const LINEAR_LOG_LIMIT: f64 = 700.0;

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Inputs {
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub lambda: Vec<f64>,
    pub hbar: f64,
    pub x: f64,
}

impl From<&SpectralData> for Inputs {
    fn from(s: &SpectralData) -> Self {
        Inputs {
            m: s.m,
            n: s.n,
            lambda: s.lambda.clone(),
            hbar: s.h(),
            x: s.x,
        }
    }
}

/// A complex value as `e^{log_mag + i·phase}`; `log_mag = None` is zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueRecord {
    pub log_mag: Option<f64>,
    pub phase: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub re: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<f64>,
}

impl From<LogComplex> for ValueRecord {
    fn from(v: LogComplex) -> Self {
        if v.is_zero() {
            return ValueRecord {
                log_mag: None,
                phase: 0.0,
                re: Some(0.0),
                im: Some(0.0),
            };
        }
        let linear = v.log_mag.abs() < LINEAR_LOG_LIMIT;
        let z = v.to_complex();
        ValueRecord {
            log_mag: finite(v.log_mag),
            phase: if v.phase.is_finite() { v.phase } else { 0.0 },
            re: if linear { finite(z.re) } else { None },
            im: if linear { finite(z.im) } else { None },
        }
    }
}

impl ValueRecord {
    pub fn to_log_complex(&self) -> LogComplex {
        match self.log_mag {
            Some(l) => LogComplex::new(l, self.phase),
            None => LogComplex::new(f64::NEG_INFINITY, 0.0),
        }
    }
}

/// Error estimate of one evaluator; fields that do not apply are `None`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorEstimate {
    pub rel_error: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_truncation: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_discretization: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_rounding: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes_per_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_tail: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders_summed: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub converged: Option<bool>,
}

impl From<&MbEstimate> for ErrorEstimate {
    fn from(e: &MbEstimate) -> Self {
        ErrorEstimate {
            rel_error: finite(e.rel_error()),
            rel_truncation: finite(e.rel_truncation),
            rel_discretization: e.rel_discretization.and_then(finite),
            rel_rounding: finite(e.rel_rounding),
            nodes_per_dim: Some(e.nodes),
            ..Default::default()
        }
    }
}

impl From<&SeriesEstimate> for ErrorEstimate {
    fn from(e: &SeriesEstimate) -> Self {
        ErrorEstimate {
            rel_error: finite(e.rel_tail),
            rel_tail: finite(e.rel_tail),
            orders_summed: Some(e.orders_summed),
            terms: Some(e.terms),
            converged: Some(e.converged),
            ..Default::default()
        }
    }
}

/// Second evaluator's result when both methods run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Comparison {
    pub residue_value: ValueRecord,
    pub residue_error_estimate: ErrorEstimate,
    /// `|mb − residue| / |mb|`.
    pub rel_discrepancy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorRecord {
    pub kind: String,
    pub message: String,
}

impl From<&pwhit_core::Error> for ErrorRecord {
    fn from(e: &pwhit_core::Error) -> Self {
        ErrorRecord {
            kind: e.kind().to_string(),
            message: e.to_string(),
        }
    }
}

/// One evaluation (`eval`, `asympt`, `xval`, or one `sweep` row).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultRecord {
    pub schema: u32,
    pub command: String,
    pub inputs: Inputs,
    /// `mb`, `residue`, `both`, or `leading_asymptotic`.
    pub method: String,
    pub value: Option<ValueRecord>,
    pub error_estimate: Option<ErrorEstimate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Comparison>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorRecord>,
    /// Seconds; the only field allowed to differ between identical runs.
    pub wall_time: f64,
    pub library_version: String,
}

impl ResultRecord {
    pub fn new(command: &str, inputs: Inputs, method: &str) -> Self {
        ResultRecord {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            method: method.to_string(),
            value: None,
            error_estimate: None,
            comparison: None,
            error: None,
            wall_time: 0.0,
            library_version: pwhit_core::VERSION.to_string(),
        }
    }

    pub fn failed(mut self, e: &pwhit_core::Error) -> Self {
        self.error = Some(e.into());
        self
    }
}

/// One `sweep` row: the record plus `value / leading_asymptotic`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepRow {
    pub x: f64,
    pub record: ResultRecord,
    pub ratio: Option<ValueRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepTable {
    pub schema: u32,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkippedSuite {
    pub suite: String,
    pub reason: String,
}

/// `verify` output. Carries no timing so reruns are byte-identical.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyReport {
    pub schema: u32,
    pub seed: u64,
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub hbar: f64,
    pub pass: bool,
    pub suites: Vec<SuiteReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<SkippedSuite>,
    pub library_version: String,
}
