use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Outcome of one inequality check, `lhs <= bound`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "GapRecord", from = "GapRecord")]
pub struct GapReport {
    pub label: String,
    pub k: usize,
    pub m: Option<usize>,
    pub lhs: f64,
    pub bound: f64,
    /// `bound - lhs`.
    pub slack: f64,
    pub pass: bool,
    pub witness: Option<Complex64>,
}

impl GapReport {
    /// Passes when `slack >= -tolerance`.
    pub fn new(label: impl Into<String>, k: usize, lhs: f64, bound: f64, tolerance: f64) -> Self {
        let slack = bound - lhs;
        Self {
            label: label.into(),
            k,
            m: None,
            lhs,
            bound,
            slack,
            pass: slack >= -tolerance,
            witness: None,
        }
    }

    pub fn with_m(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_witness(mut self, witness: Complex64) -> Self {
        self.witness = Some(witness);
        self
    }
}

/// Flat form used for the CSV row `label,k,m,lhs,bound,slack,pass,witness_re,witness_im`
/// and its JSON counterpart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapRecord {
    pub label: String,
    pub k: usize,
    pub m: Option<usize>,
    pub lhs: f64,
    pub bound: f64,
    pub slack: f64,
    pub pass: bool,
    pub witness_re: Option<f64>,
    pub witness_im: Option<f64>,
}

impl From<GapReport> for GapRecord {
    fn from(r: GapReport) -> Self {
        GapRecord {
            label: r.label,
            k: r.k,
            m: r.m,
            lhs: r.lhs,
            bound: r.bound,
            slack: r.slack,
            pass: r.pass,
            witness_re: r.witness.map(|w| w.re),
            witness_im: r.witness.map(|w| w.im),
        }
    }
}

impl From<GapRecord> for GapReport {
    fn from(r: GapRecord) -> Self {
        let witness = match (r.witness_re, r.witness_im) {
            (Some(re), Some(im)) => Some(Complex64::new(re, im)),
            _ => None,
        };
        GapReport {
            label: r.label,
            k: r.k,
            m: r.m,
            lhs: r.lhs,
            bound: r.bound,
            slack: r.slack,
            pass: r.pass,
            witness,
        }
    }
}

/// One output row of `salagean verify`: a [`GapReport`] tagged with the class
/// order and the sample seed that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub label: String,
    pub n: Option<u32>,
    pub k: usize,
    pub m: Option<usize>,
    pub sample_seed: Option<u64>,
    pub lhs: f64,
    pub bound: f64,
    pub slack: f64,
    pub pass: bool,
    pub witness_re: Option<f64>,
    pub witness_im: Option<f64>,
}

impl ReportRow {
    pub const CSV_HEADER: &'static str = "label,n,k,m,sample_seed,lhs,bound,slack,pass,witness_re,witness_im";

    pub fn new(report: GapReport, n: Option<u32>, sample_seed: Option<u64>) -> Self {
        let flat = GapRecord::from(report);
        ReportRow {
            label: flat.label,
            n,
            k: flat.k,
            m: flat.m,
            sample_seed,
            lhs: flat.lhs,
            bound: flat.bound,
            slack: flat.slack,
            pass: flat.pass,
            witness_re: flat.witness_re,
            witness_im: flat.witness_im,
        }
    }
}
