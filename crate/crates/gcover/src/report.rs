//! JSON and CSV reports.

use serde::{Deserialize, Serialize};

use gcover_core::record::VerificationRecord;

use crate::harness::{param_text, Summary};
use crate::Result;

pub const REPORT_VERSION: u64 = 1;

pub const CSV_HEADER: [&str; 8] = ["group_label", "order", "m", "sigma", "theorem_id", "outcome", "case_id", "reason"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: u64,
    pub summary: Summary,
    pub records: Vec<VerificationRecord>,
}

impl Report {
    pub fn new(records: Vec<VerificationRecord>) -> Report {
        Report { version: REPORT_VERSION, summary: Summary::of(&records), records }
    }
}

pub fn emit_report(records: &[VerificationRecord], format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(&Report::new(records.to_vec()))?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let row_err = |e: csv::Error| crate::Error::Usage(format!("csv: {e}"));
            w.write_record(CSV_HEADER).map_err(row_err)?;
            for r in records {
                w.write_record([
                    r.group_label.clone(),
                    param_text(r, "order"),
                    param_text(r, "m"),
                    param_text(r, "sigma"),
                    r.theorem_id.clone(),
                    r.outcome.as_str().to_string(),
                    param_text(r, "case_id"),
                    r.reason.clone(),
                ])
                .map_err(row_err)?;
            }
            w.into_inner().map_err(|e| crate::Error::Usage(format!("csv: {e}")))
        }
    }
}
