use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;

use strictstable::EvalResult;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub x: f64,
    pub value: f64,
    pub method: &'static str,
    pub error_estimate: f64,
    pub warnings: Vec<&'static str>,
}

impl Record {
    pub fn new(x: f64, r: &EvalResult) -> Self {
        Self {
            x,
            value: r.value,
            method: r.method.as_str(),
            error_estimate: r.error_estimate,
            warnings: r.warnings.iter().map(|w| w.as_str()).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub x_eps_pdf: f64,
    pub x_eps_cdf: f64,
}

/// Seventeen significant digits, enough to round-trip any double.
pub fn fmt17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

pub struct Sink(Box<dyn Write>);

impl Sink {
    pub fn open(path: Option<&Path>) -> Result<Self, CliError> {
        let w: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(Sink(w))
    }

    fn csv(&mut self, header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(&mut self.0);
        w.write_record(header).map_err(csv_err)?;
        for row in rows {
            w.write_record(&row).map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }

    fn json<T: Serialize>(&mut self, items: &[T]) -> Result<(), CliError> {
        serde_json::to_writer_pretty(&mut self.0, items).map_err(|e| CliError::Eval(e.to_string()))?;
        writeln!(self.0)?;
        self.0.flush()?;
        Ok(())
    }

    pub fn write_records(mut self, recs: &[Record], format: Format) -> Result<(), CliError> {
        match format {
            Format::Json => self.json(recs),
            Format::Csv => self.csv(
                &["x", "value", "method", "error_estimate", "warnings"],
                recs.iter().map(|r| {
                    vec![
                        fmt17(r.x),
                        fmt17(r.value),
                        r.method.to_string(),
                        fmt17(r.error_estimate),
                        r.warnings.join(";"),
                    ]
                }),
            ),
        }
    }

    pub fn write_thresholds(mut self, rows: &[ThresholdRow], format: Format) -> Result<(), CliError> {
        match format {
            Format::Json => self.json(rows),
            Format::Csv => self.csv(
                &["N", "x_eps_pdf", "x_eps_cdf"],
                rows.iter()
                    .map(|r| vec![r.n.to_string(), fmt17(r.x_eps_pdf), fmt17(r.x_eps_cdf)]),
            ),
        }
    }
}

pub fn csv_err(e: csv::Error) -> CliError {
    CliError::Eval(e.to_string())
}
