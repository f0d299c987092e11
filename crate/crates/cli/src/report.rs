use std::fmt;
use std::io::Write;

use anyhow::Result;
use quiddity::record::CSV_HEADER;
use quiddity::QuiddityRecord;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::config::{Format, RunConfig};

/// A bad invocation: exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    /// A falsification probe found a counterexample.
    Counterexample,
    /// The run stopped early on the work limit.
    WorkLimit,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::Counterexample => 1,
            Status::WorkLimit => 3,
        }
    }
}

/// What a subcommand produced, ready to be written in any format.
#[derive(Clone, Debug)]
pub struct Report {
    pub result: Value,
    /// Listed objects; `jsonl` writes one per line.
    pub items: Option<Vec<Value>>,
    /// The rows for `csv`, when the items are quiddities.
    pub records: Option<Vec<QuiddityRecord>>,
    pub text: String,
    pub status: Status,
}

impl Report {
    pub fn new(result: impl Serialize, text: String) -> Result<Report> {
        Ok(Report {
            result: serde_json::to_value(result)?,
            items: None,
            records: None,
            text,
            status: Status::Success,
        })
    }

    pub fn with_items<T: Serialize>(mut self, items: &[T]) -> Result<Report> {
        self.items = Some(
            items
                .iter()
                .map(serde_json::to_value)
                .collect::<serde_json::Result<_>>()?,
        );
        Ok(self)
    }

    pub fn with_records(mut self, records: Vec<QuiddityRecord>) -> Result<Report> {
        self = self.with_items(&records)?;
        self.records = Some(records);
        Ok(self)
    }

    pub fn with_status(mut self, status: Status) -> Report {
        self.status = status;
        self
    }
}

/// Rejects `csv` for subcommands whose output is not a list of quiddities.
pub fn check_format(format: Format, lists_quiddities: bool) -> Result<()> {
    if format == Format::Csv && !lists_quiddities {
        return Err(usage(
            "csv output is only available for subcommands that list quiddities",
        ));
    }
    Ok(())
}

pub fn emit(config: &RunConfig, report: &Report, out: &mut dyn Write) -> Result<()> {
    let config_value = serde_json::to_value(config)?;
    match config.format {
        Format::Json => {
            let mut doc = Map::new();
            doc.insert("config".into(), config_value);
            doc.insert("result".into(), report.result.clone());
            if let Some(items) = &report.items {
                doc.insert("items".into(), Value::Array(items.clone()));
            }
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&Value::Object(doc))?
            )?;
        }
        Format::Jsonl => {
            let mut head = Map::new();
            head.insert("config".into(), config_value);
            head.insert("result".into(), report.result.clone());
            writeln!(out, "{}", Value::Object(head))?;
            for item in report.items.iter().flatten() {
                writeln!(out, "{item}")?;
            }
        }
        Format::Csv => {
            let records = report.records.as_ref().ok_or_else(|| {
                usage("csv output is only available for subcommands that list quiddities")
            })?;
            writeln!(out, "# config: {config_value}")?;
            writeln!(out, "{CSV_HEADER}")?;
            for r in records {
                writeln!(out, "{}", r.to_csv_row())?;
            }
        }
        Format::Text => {
            writeln!(out, "# config: {config_value}")?;
            out.write_all(report.text.as_bytes())?;
            if !report.text.is_empty() && !report.text.ends_with('\n') {
                writeln!(out)?;
            }
        }
    }
    Ok(())
}
