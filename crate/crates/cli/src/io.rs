//! Input plumbing: read codes, families, and vectors from files or stdin.

use std::fs;
use std::io::Read;

use kneser_lab_core::{Error, FieldVector, LinearCode, PrimeField, SetFamily};

/// Process exit codes. Usage errors and data-format errors are separated so
/// that scripts can tell them apart; budget exhaustion is the inconclusive
/// code also used by `verify`.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_INTERNAL: i32 = 70;

pub struct CliFailure {
    pub message: String,
    pub code: i32,
}

impl CliFailure {
    pub fn new(message: impl Into<String>, code: i32) -> Self {
        CliFailure {
            message: message.into(),
            code,
        }
    }
}

impl From<Error> for CliFailure {
    fn from(err: Error) -> Self {
        let code = match &err {
            Error::Parse(_) | Error::LengthMismatch { .. } => EXIT_DATA,
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::Internal(_) => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        CliFailure::new(err.to_string(), code)
    }
}

pub fn read_input(path: &str) -> Result<String, CliFailure> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliFailure::new(format!("reading stdin: {e}"), EXIT_DATA))?;
        Ok(buf)
    } else {
        fs::read_to_string(path)
            .map_err(|e| CliFailure::new(format!("reading {path}: {e}"), EXIT_DATA))
    }
}

/// Families are accepted in the line format ("n" then bitstrings) or as the
/// JSON object {"n": ..., "members": [...]}.
pub fn read_family(path: &str) -> Result<SetFamily, CliFailure> {
    let text = read_input(path)?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let value: serde_json::Value = serde_json::from_str(trimmed)
            .map_err(|e| CliFailure::new(format!("family JSON: {e}"), EXIT_DATA))?;
        return SetFamily::from_json(&value).map_err(data_error);
    }
    SetFamily::parse(&text).map_err(data_error)
}

pub fn read_code(path: &str) -> Result<LinearCode, CliFailure> {
    let text = read_input(path)?;
    LinearCode::parse(&text).map_err(data_error)
}

pub fn parse_vector(field: PrimeField, text: &str) -> Result<FieldVector, CliFailure> {
    FieldVector::parse(field, text).map_err(data_error)
}

fn data_error(err: Error) -> CliFailure {
    CliFailure::new(err.to_string(), EXIT_DATA)
}

/// 1-based coordinate list like "1,2,5" into a bitmask.
pub fn parse_coords(spec: &str, n: usize) -> Result<u64, CliFailure> {
    let mut mask = 0u64;
    if spec.trim().is_empty() {
        return Ok(0);
    }
    for token in spec.split(',') {
        let idx: usize = token
            .trim()
            .parse()
            .map_err(|e| CliFailure::new(format!("coordinate '{token}': {e}"), EXIT_USAGE))?;
        if idx == 0 || idx > n {
            return Err(CliFailure::new(
                format!("coordinate {idx} out of range 1..={n}"),
                EXIT_USAGE,
            ));
        }
        mask |= 1 << (idx - 1);
    }
    Ok(mask)
}
