//! Run manifests: the fully resolved configuration plus run metadata and
//! summary results, written next to every output. Re-running with a manifest
//! as `--config` reproduces the analytic outputs bit-identically, and the
//! Monte Carlo outputs identically given the recorded seed.

use std::path::Path;

use serde::Serialize;

use crate::config::Config;
use crate::error::CliError;
use crate::output::write_atomic;

#[derive(Debug, Serialize)]
struct ManifestHeader<'a> {
    command: &'a str,
    tool_version: &'a str,
    timestamp_utc: String,
    seed: u64,
    outputs: &'a [String],
}

/// Writes `<command>_manifest.toml` and returns its file name.
pub fn write_manifest(
    dir: &Path,
    command: &str,
    config: &Config,
    outputs: &[String],
    results: &toml::Table,
) -> Result<String, CliError> {
    let header = ManifestHeader {
        command,
        tool_version: env!("CARGO_PKG_VERSION"),
        timestamp_utc: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        seed: config.run.seed,
        outputs,
    };
    let mut document = String::new();
    document.push_str("[manifest]\n");
    document.push_str(&toml::to_string(&header).map_err(to_io)?);
    if !results.is_empty() {
        document.push_str("\n[results]\n");
        document.push_str(&toml::to_string(results).map_err(to_io)?);
    }
    document.push('\n');
    document.push_str(&toml::to_string(config).map_err(to_io)?);

    let name = format!("{command}_manifest.toml");
    write_atomic(dir, &name, &document)?;
    Ok(name)
}

fn to_io(err: toml::ser::Error) -> CliError {
    CliError::io(format!("cannot serialize manifest: {err}"))
}
