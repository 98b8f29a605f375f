//! Output rendering: CSV and JSON serialization plus output-path plumbing.
//!
//! Both serializers print floating-point numbers as the shortest decimal
//! string that parses back to the identical bits, so a value appears with the
//! same digits in every format and survives a round trip exactly. CSV output
//! is RFC-4180-style: a header row, comma separators, LF line endings, and
//! quoting only where needed.

use std::path::{Path, PathBuf};

use serde::Serialize;

/// Environment variable naming the directory relative output paths land in.
pub const OUTPUT_DIR_ENV: &str = "INCUMBENCY_OUTPUT_DIR";

/// Serializes one header row plus one record per item.
pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row).map_err(|err| format!("csv serialization: {err}"))?;
    }
    let bytes = writer.into_inner().map_err(|err| format!("csv flush: {err}"))?;
    String::from_utf8(bytes).map_err(|err| format!("csv encoding: {err}"))
}

/// Serializes a single header-only line for an empty table of `T`.
///
/// The csv crate only learns the header from a record, so serialize one
/// default row and keep the header line.
pub fn csv_header_only<T: Serialize + Default>() -> Result<String, String> {
    let rendered = to_csv(&[T::default()])?;
    let header = rendered.lines().next().unwrap_or_default();
    Ok(format!("{header}\n"))
}

/// Serializes a pretty-printed JSON document with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string_pretty(value)
        .map(|mut text| {
            text.push('\n');
            text
        })
        .map_err(|err| format!("json serialization: {err}"))
}

/// Resolves where `--output` points: relative paths land in the directory
/// named by `INCUMBENCY_OUTPUT_DIR` when that variable is set.
pub fn resolve_output_path(requested: &Path) -> PathBuf {
    if requested.is_absolute() {
        return requested.to_path_buf();
    }
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir).join(requested),
        _ => requested.to_path_buf(),
    }
}

/// Writes rendered output to the resolved path, creating parent directories,
/// or to stdout when no path was requested.
pub fn emit(rendered: &str, output: Option<&Path>) -> Result<(), std::io::Error> {
    match output {
        None => {
            print!("{rendered}");
            Ok(())
        }
        Some(requested) => {
            let path = resolve_output_path(requested);
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)?;
                }
            }
            std::fs::write(path, rendered)
        }
    }
}

// ---------------------------------------------------------------------------
