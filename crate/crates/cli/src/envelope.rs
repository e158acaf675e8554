//! Output records shared by every subcommand.

use std::collections::BTreeMap;
use std::io::Write;

use mascheroni::real::{Dyadic, Round};
use mascheroni::BigReal;
use serde::Serialize;
use serde_json::Value;

pub const VERSION: &str = concat!("mascheroni ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub precision: Option<u32>,
    /// Significant digits of every decimal string in the rows.
    pub digits: Option<usize>,
    pub enclosure_width: Option<String>,
    pub version: &'static str,
}

pub type Row = BTreeMap<String, Value>;

#[derive(Debug, Clone, Serialize)]
pub struct OutputEnvelope {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub rows: Vec<Row>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<Row>,
    pub metadata: Metadata,
    /// CSV column order; JSON keys are sorted instead.
    #[serde(skip)]
    pub columns: Vec<&'static str>,
}

impl OutputEnvelope {
    pub fn new(command: &str, columns: Vec<&'static str>) -> Self {
        OutputEnvelope {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            rows: Vec::new(),
            summary: None,
            metadata: Metadata {
                precision: None,
                digits: None,
                enclosure_width: None,
                version: VERSION,
            },
            columns,
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn precision(&mut self, p: u32) -> &mut Self {
        self.metadata.precision = Some(p);
        self.metadata.digits = Some(digits_for(p));
        self
    }

    /// Canonical JSON: object keys sorted, two-space indentation.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("envelope is serializable");
        serde_json::to_string_pretty(&value).expect("value is serializable")
    }

    pub fn write_csv(&self, out: impl Write) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(
                self.columns
                    .iter()
                    .map(|c| row.get(*c).map(cell).unwrap_or_default()),
            )?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn emit(&self, format: Format) -> std::io::Result<()> {
        let stdout = std::io::stdout();
        match format {
            Format::Json => writeln!(stdout.lock(), "{}", self.to_json()),
            Format::Csv => self.write_csv(stdout.lock()).map_err(std::io::Error::other),
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Decimal digits carried by `p` bits.
pub fn digits_for(p: u32) -> usize {
    ((p as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as usize
}

pub fn sci(d: &Dyadic, p: u32, dir: Round) -> String {
    d.to_sci_string(digits_for(p), dir)
}

/// Exact fraction when the interval is a single rational point, otherwise
/// the rounded midpoint.
pub fn real_value(x: &BigReal, p: u32) -> String {
    if x.lo() == x.hi() {
        mascheroni::rational::to_fraction_string(&x.lo().to_rational())
    } else {
        sci(&x.mid(), p, Round::Nearest)
    }
}

pub fn row<const N: usize>(entries: [(&str, Value); N]) -> Row {
    entries
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}
