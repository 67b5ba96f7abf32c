//! Atomic file output and CSV formatting.
//!
//! Value columns use scientific notation with 13 significant digits; files
//! are written to a temporary sibling and renamed into place so partially
//! written outputs never appear under the final name.

use std::path::{Path, PathBuf};

use crate::error::CliError;

/// One CSV cell: full-precision scientific notation.
pub fn cell(value: f64) -> String {
    format!("{value:.12e}")
}

/// Optional cell; absent values become empty fields.
pub fn opt_cell(value: Option<f64>) -> String {
    value.map(cell).unwrap_or_default()
}

/// Builds a CSV document from a header and rows.
pub fn csv_document(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Writes `content` atomically (temp file + rename) under `dir/name`.
pub fn write_atomic(dir: &Path, name: &str, content: &str) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir).map_err(|err| {
        CliError::io(format!("cannot create output directory {}: {err}", dir.display()))
    })?;
    let target = dir.join(name);
    let tmp = dir.join(format!(".{name}.tmp-{}", std::process::id()));
    std::fs::write(&tmp, content)
        .map_err(|err| CliError::io(format!("cannot write {}: {err}", tmp.display())))?;
    std::fs::rename(&tmp, &target)
        .map_err(|err| CliError::io(format!("cannot move output into {}: {err}", target.display())))?;
    Ok(target)
}
