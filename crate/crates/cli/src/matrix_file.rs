//! Matrix files: CSV (one row per line, comma-separated, no header) or
//! JSON (`{"n": 3, "rows": [[..], [..], [..]]}`). The extension picks the
//! format, `.json` meaning JSON and anything else CSV. Files written here
//! use the same pinned float text as the reports, so a written matrix
//! parses back to the exact doubles that were generated.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::report::pinned_float;

/// A failed read, parse, or write; always mapped to exit code 5.
#[derive(Debug)]
pub struct FileError {
    pub kind: &'static str,
    pub message: String,
}

impl FileError {
    fn io(path: &Path, err: std::io::Error) -> Self {
        FileError {
            kind: "io",
            message: format!("{}: {err}", path.display()),
        }
    }

    fn parse(path: &Path, detail: impl std::fmt::Display) -> Self {
        FileError {
            kind: "parse",
            message: format!("{}: {detail}", path.display()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonMatrix {
    n: usize,
    rows: Vec<Vec<f64>>,
}

fn is_json(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

/// Reads raw rows; stochastic validation happens separately so that a
/// well-formed file with bad numbers is a validation failure, not a
/// parse failure.
pub fn read_rows(path: &Path) -> Result<Vec<Vec<f64>>, FileError> {
    let text = fs::read_to_string(path).map_err(|e| FileError::io(path, e))?;
    if is_json(path) {
        let parsed: JsonMatrix =
            serde_json::from_str(&text).map_err(|e| FileError::parse(path, e))?;
        if parsed.rows.len() != parsed.n || parsed.rows.iter().any(|r| r.len() != parsed.n) {
            return Err(FileError::parse(
                path,
                format!("declared n = {} does not match the rows", parsed.n),
            ));
        }
        Ok(parsed.rows)
    } else {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split(',')
                .map(|field| field.trim().parse::<f64>())
                .collect::<Result<Vec<f64>, _>>()
                .map_err(|e| {
                    FileError::parse(path, format!("line {}: {e}", lineno + 1))
                })?;
            rows.push(row);
        }
        Ok(rows)
    }
}

/// Writes rows in the format chosen by the extension.
pub fn write_rows(path: &Path, rows: &[Vec<f64>]) -> Result<(), FileError> {
    let text = if is_json(path) {
        let doc = JsonMatrix {
            n: rows.len(),
            rows: rows.to_vec(),
        };
        crate::report::to_json(&doc)
    } else {
        let mut out = String::new();
        for row in rows {
            let line: Vec<String> = row.iter().map(|&x| pinned_float(x)).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    };
    fs::write(path, text).map_err(|e| FileError::io(path, e))
}
