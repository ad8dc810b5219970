//! File emission: fixed float formatting, LF-terminated CSV with embedded
//! provenance comments, pretty JSON reports.

use crate::error::AppError;
use ghz_chain::TOOL_VERSION;
use serde::Serialize;
use std::fs;
use std::path::Path;

/// 17 significant digits — enough to round-trip any f64 bit pattern.
pub fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

/// Provenance comment lines placed before every CSV header.
pub fn csv_preamble(config_hash: &str) -> String {
    format!("# config_hash={config_hash}\n# tool_version={TOOL_VERSION}\n")
}

pub fn write_text(path: &Path, content: &str) -> Result<(), AppError> {
    fs::write(path, content).map_err(|e| AppError::io(path, e))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), AppError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| AppError::Io(format!("{}: {e}", path.display())))?;
    text.push('\n');
    write_text(path, &text)
}
