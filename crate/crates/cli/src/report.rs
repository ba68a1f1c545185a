//! Machine-readable run reports. One flat schema covers every command;
//! fields a command does not produce are omitted. Floats are printed with
//! 17 significant digits so any reported number parses back to the exact
//! double that was computed.

use std::io;

use serde::Serialize;
use stationary_core::{ProbabilityVector, SolveReport};

/// Result of one solver route, nested under `direct` / `cesaro` when the
/// tool runs both and compares.
#[derive(Serialize)]
pub struct MethodReport {
    pub method: &'static str,
    pub pi: Vec<f64>,
    pub residual: f64,
    pub iterations: u64,
    pub positivity_margin: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_dimension: Option<usize>,
}

impl MethodReport {
    pub fn new(pi: &ProbabilityVector, report: &SolveReport) -> Self {
        MethodReport {
            method: report.method.name(),
            pi: pi.entries().to_vec(),
            residual: report.residual,
            iterations: report.iterations,
            positivity_margin: report.positivity_margin,
            kernel_dimension: report.kernel_dimension,
        }
    }
}

/// The report printed on standard output. Field order here is the key
/// order in the emitted JSON.
#[derive(Serialize)]
pub struct RunReport {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coupling: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub renormalized: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub irreducible: Option<bool>,
    /// A pair `(i, j)` with no positive-probability path from `i` to `j`;
    /// present exactly when a reducible matrix was certified.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_powers: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pi: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positivity_margin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direct: Option<MethodReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cesaro: Option<MethodReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance_inf: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub start: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical: Option<Vec<f64>>,
    pub elapsed_ms: u64,
}

impl RunReport {
    /// Report with every optional field blank; commands fill what they
    /// actually computed.
    pub fn new(command: &'static str) -> Self {
        RunReport {
            command,
            matrix_file: None,
            kind: None,
            n: None,
            seed: None,
            coupling: None,
            renormalized: None,
            irreducible: None,
            witness: None,
            min_powers: None,
            method: None,
            pi: None,
            residual: None,
            iterations: None,
            positivity_margin: None,
            kernel_dimension: None,
            direct: None,
            cesaro: None,
            distance_inf: None,
            steps: None,
            start: None,
            counts: None,
            empirical: None,
            elapsed_ms: 0,
        }
    }
}

// 17 significant digits: one leading digit plus 16 after the point in
// scientific notation. Enough to reproduce any f64 exactly on parse.
struct SeventeenDigits;

impl serde_json::ser::Formatter for SeventeenDigits {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{:.16e}", value as f64)
    }
}

/// Serializes any report-like value with pinned float formatting.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SeventeenDigits);
    value
        .serialize(&mut ser)
        .expect("reports contain only finite numbers and strings");
    String::from_utf8(buf).expect("JSON output is UTF-8")
}

/// Pinned text form of one float, shared with the matrix file writer.
pub fn pinned_float(value: f64) -> String {
    format!("{value:.16e}")
}
