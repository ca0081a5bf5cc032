//! CSV and JSON emission. Files are written to a temporary sibling and
//! renamed into place.

use crate::config::RunConfig;
use crate::CliError;
use rpl_core::experiments::ReportTable;
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Comment lines that open every CSV file.
pub fn header_lines(cfg: &RunConfig) -> Result<String, CliError> {
    let config = serde_json::to_string(cfg).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(format!("# rpl {VERSION} (rpl-core {})\n# config: {config}\n", rpl_core::VERSION))
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "NaN".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// The table as CSV (RFC 4180 quoting) after the header comment lines.
pub fn table_csv(cfg: &RunConfig, table: &ReportTable) -> Result<Vec<u8>, CliError> {
    let mut buf = header_lines(cfg)?.into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(&table.columns).map_err(|e| CliError::Io(e.to_string()))?;
        for row in &table.rows {
            w.write_record(row.iter().map(cell)).map_err(|e| CliError::Io(e.to_string()))?;
        }
        w.flush().map_err(|e| CliError::Io(e.to_string()))?;
    }
    Ok(buf)
}

/// Summary record: config, version, summary values and flags.
pub fn summary_json(cfg: &RunConfig, table: &ReportTable) -> Value {
    json!({
        "version": VERSION,
        "config": cfg,
        "report": table.report,
        "summary": table.summary,
        "flags": table.flags,
        "passed": table.passed(),
    })
}

pub fn table_json(cfg: &RunConfig, table: &ReportTable) -> Value {
    let mut v = summary_json(cfg, table);
    v["columns"] = json!(table.columns);
    v["rows"] = json!(table.rows);
    v
}

fn pretty(v: &Value) -> Result<Vec<u8>, CliError> {
    let mut s = serde_json::to_vec_pretty(v).map_err(|e| CliError::Io(e.to_string()))?;
    s.push(b'\n');
    Ok(s)
}

/// Write `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// `out.csv` → `out.summary.json`.
pub fn summary_path(out: &Path) -> PathBuf {
    out.with_extension("summary.json")
}

/// Emit a table according to the config: CSV (plus a JSON summary) or one
/// JSON document; to `--out` or stdout.
pub fn emit(cfg: &RunConfig, table: &ReportTable) -> Result<(), CliError> {
    use crate::config::Format;
    match (&cfg.out, cfg.format) {
        (Some(out), Format::Csv) => {
            write_atomic(out, &table_csv(cfg, table)?)?;
            write_atomic(&summary_path(out), &pretty(&summary_json(cfg, table))?)
        }
        (Some(out), Format::Json) => write_atomic(out, &pretty(&table_json(cfg, table))?),
        (None, Format::Csv) => {
            let mut so = std::io::stdout().lock();
            so.write_all(&table_csv(cfg, table)?).map_err(|e| CliError::Io(e.to_string()))?;
            let mut se = std::io::stderr().lock();
            se.write_all(&pretty(&summary_json(cfg, table))?).map_err(|e| CliError::Io(e.to_string()))
        }
        (None, Format::Json) => std::io::stdout()
            .lock()
            .write_all(&pretty(&table_json(cfg, table))?)
            .map_err(|e| CliError::Io(e.to_string())),
    }
}
