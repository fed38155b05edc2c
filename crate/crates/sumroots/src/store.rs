//! Append-only JSON-lines result store.
//!
//! Every run starts with a header line carrying the tool version and the full
//! run configuration, followed by one line per record:
//!
//! ```text
//! {"body":{...},"kind":"clique","timing":{"elapsed_ms":3}}
//! ```
//!
//! Wall-clock data lives only under `timing`, so bodies are byte-identical
//! across reruns with the same configuration and seed.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{CliError, CliResult};
use crate::wire::Record;

pub const TOOL: &str = "sumroots";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn header_line<C: Serialize>(config: &C) -> CliResult<String> {
    let config = serde_json::to_value(config)?;
    Ok(json!({ "kind": "header", "tool": TOOL, "version": VERSION, "config": config }).to_string())
}

pub fn record_line(record: &Record, elapsed_ms: Option<u64>) -> CliResult<String> {
    let mut timing = Map::new();
    if let Some(ms) = elapsed_ms {
        timing.insert("elapsed_ms".into(), ms.into());
    }
    Ok(json!({ "kind": record.kind(), "body": record.body()?, "timing": timing }).to_string())
}

pub struct ResultStore {
    out: BufWriter<File>,
}

impl ResultStore {
    /// Opens `path` for appending and writes this run's header.
    pub fn open<C: Serialize>(path: &Path, config: &C) -> CliResult<Self> {
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        let mut store = ResultStore { out: BufWriter::new(file) };
        writeln!(store.out, "{}", header_line(config)?)?;
        Ok(store)
    }

    pub fn append(&mut self, record: &Record, elapsed_ms: Option<u64>) -> CliResult<()> {
        writeln!(self.out, "{}", record_line(record, elapsed_ms)?)?;
        Ok(())
    }

    pub fn finish(mut self) -> CliResult<()> {
        self.out.flush()?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum StoredLine {
    Header(Value),
    Record { record: Record, elapsed_ms: Option<u64> },
}

fn parse_line(line: &str) -> CliResult<StoredLine> {
    let mut value: Value = serde_json::from_str(line)?;
    let kind = value.get("kind").and_then(Value::as_str).map(str::to_owned);
    match kind.as_deref() {
        Some("header") => Ok(StoredLine::Header(value)),
        Some(kind) => {
            let body =
                value.get_mut("body").map(Value::take).ok_or_else(|| CliError::Format("record without body".into()))?;
            let elapsed_ms = value.pointer("/timing/elapsed_ms").and_then(Value::as_u64);
            Ok(StoredLine::Record { record: Record::from_body(kind, body)?, elapsed_ms })
        }
        None => Err(CliError::Format("line without a kind".into())),
    }
}

/// Every line of a store, in order. Blank lines are skipped.
pub fn read_store(path: &Path) -> CliResult<Vec<StoredLine>> {
    let file = File::open(path).map_err(|e| CliError::Config(format!("cannot open store {}: {e}", path.display())))?;
    let mut lines = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed = parse_line(&line).map_err(|e| CliError::Format(format!("{}:{}: {e}", path.display(), i + 1)))?;
        lines.push(parsed);
    }
    if let Some(StoredLine::Record { .. }) = lines.first() {
        return Err(CliError::Format(format!("{}: first line is not a header", path.display())));
    }
    Ok(lines)
}

/// Just the records of a store.
pub fn read_records(path: &Path) -> CliResult<Vec<Record>> {
    Ok(read_store(path)?
        .into_iter()
        .filter_map(|l| match l {
            StoredLine::Record { record, .. } => Some(record),
            StoredLine::Header(_) => None,
        })
        .collect())
}
