//! Versioned JSON reports and their CSV rendering.

use std::collections::BTreeMap;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use super::config::RunConfig;
use crate::analysis::CheckRecord;
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_NAME: &str = "finsler";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub sample_count: usize,
    pub seed: u64,
    pub notes: Vec<String>,
}

impl Record {
    pub fn new(
        name: impl Into<String>,
        max_residual: f64,
        tolerance: f64,
        sample_count: usize,
        seed: u64,
    ) -> Self {
        Record {
            name: name.into(),
            max_residual,
            tolerance,
            pass: max_residual <= tolerance,
            sample_count,
            seed,
            notes: Vec::new(),
        }
    }

    pub fn from_check(c: &CheckRecord, seed: u64) -> Self {
        Record {
            name: c.name.clone(),
            max_residual: c.max_residual,
            tolerance: c.tolerance,
            pass: c.pass,
            sample_count: c.sample_count,
            seed,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Seconds since the Unix epoch; not part of the determinism contract.
    pub timestamp: u64,
    pub config: RunConfig,
    pub records: Vec<Record>,
    pub verdicts: BTreeMap<String, String>,
    pub details: serde_json::Value,
}

impl Report {
    pub fn new(command: &str, config: RunConfig) -> Self {
        let timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        Report {
            schema: SCHEMA_VERSION,
            tool: TOOL_NAME.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            timestamp,
            config,
            records: Vec::new(),
            verdicts: BTreeMap::new(),
            details: serde_json::Value::Null,
        }
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn verdict(&mut self, key: &str, value: impl ToString) {
        self.verdicts.insert(key.into(), value.to_string());
    }

    pub fn set_details(&mut self, v: &impl Serialize) -> Result<()> {
        self.details = serde_json::to_value(v)
            .map_err(|e| Error::ConfigError(format!("report details: {e}")))?;
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        to_json(self)
    }

    /// The JSON text with the timestamp zeroed.
    pub fn canonical_json(&self) -> Result<String> {
        let mut r = self.clone();
        r.timestamp = 0;
        to_json(&r)
    }

    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| Error::ConfigError(format!("report: {e}")))
    }

    /// One row per record, same fields as the JSON records; notes are
    /// joined with `; `.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::ConfigError(format!("csv: {e}"));
        w.write_record([
            "name",
            "max_residual",
            "tolerance",
            "pass",
            "sample_count",
            "seed",
            "notes",
        ])
        .map_err(csv_err)?;
        for r in &self.records {
            w.write_record([
                r.name.clone(),
                sig17(r.max_residual),
                sig17(r.tolerance),
                r.pass.to_string(),
                r.sample_count.to_string(),
                r.seed.to_string(),
                r.notes.join("; "),
            ])
            .map_err(csv_err)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::ConfigError(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::ConfigError(format!("csv: {e}")))
    }

    /// Writes `report.json` and `sweep.csv` into `dir`.
    pub fn write_files(&self, dir: &Path) -> Result<()> {
        let io_err = |e: io::Error| Error::ConfigError(format!("{}: {e}", dir.display()));
        std::fs::create_dir_all(dir).map_err(io_err)?;
        std::fs::write(dir.join("report.json"), self.to_json()?).map_err(io_err)?;
        std::fs::write(dir.join("sweep.csv"), self.to_csv()?).map_err(io_err)?;
        Ok(())
    }
}

/// Parses the CSV produced by [`Report::to_csv`] back into records.
pub fn records_from_csv(src: &str) -> Result<Vec<Record>> {
    let mut rd = csv::Reader::from_reader(src.as_bytes());
    let mut out = Vec::new();
    for row in rd.records() {
        let row = row.map_err(|e| Error::ConfigError(format!("csv: {e}")))?;
        let field = |k: usize| row.get(k).unwrap_or_default();
        let num = |k: usize| -> Result<f64> {
            match field(k) {
                "null" => Ok(f64::NAN),
                s => s
                    .parse()
                    .map_err(|_| Error::ConfigError(format!("csv: bad number `{s}`"))),
            }
        };
        let int = |k: usize| -> Result<u64> {
            field(k)
                .parse()
                .map_err(|_| Error::ConfigError(format!("csv: bad integer `{}`", field(k))))
        };
        out.push(Record {
            name: field(0).to_string(),
            max_residual: num(1)?,
            tolerance: num(2)?,
            pass: field(3) == "true",
            sample_count: int(4)? as usize,
            seed: int(5)?,
            notes: if field(6).is_empty() {
                Vec::new()
            } else {
                field(6).split("; ").map(str::to_string).collect()
            },
        });
    }
    Ok(out)
}

/// 17 significant digits, `null` for non-finite values (as in the JSON).
pub fn sig17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".into()
    }
}

/// Pretty printer that writes every float with 17 significant digits.
struct Sig17Formatter(PrettyFormatter<'static>);

impl Formatter for Sig17Formatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(sig17(value).as_bytes())
    }
    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json(v: &impl Serialize) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser =
        serde_json::Serializer::with_formatter(&mut buf, Sig17Formatter(PrettyFormatter::new()));
    v.serialize(&mut ser)
        .map_err(|e| Error::ConfigError(format!("json: {e}")))?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| Error::ConfigError(format!("json: {e}")))
}
