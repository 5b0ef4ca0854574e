//! CSV and JSON serialization of report rows. Energies are written as exact
//! `numerator/denominator` strings; output is byte-for-byte deterministic.

use std::io::{Read, Write};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::row::ReportRow;
use crate::graph::CliqueDecomposition;
use crate::scalar::{fraction_string, parse_fraction};

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad field `{field}`: {value:?}")]
    Field { field: &'static str, value: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Column order of the CSV file; JSON objects carry the same keys.
pub const COLUMNS: [&str; 20] = [
    "p",
    "m",
    "n",
    "order",
    "num_vertices",
    "num_edges",
    "decomposition",
    "E",
    "LE",
    "LE_plus",
    "ordering_case",
    "hyper",
    "border",
    "l_hyper",
    "l_border",
    "q_hyper",
    "q_border",
    "super_integral",
    "oracle_agrees",
    "warnings",
];

/// Flat record; field order is the column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct Record {
    p: u64,
    m: u32,
    n: u32,
    order: String,
    num_vertices: String,
    num_edges: String,
    decomposition: String,
    #[serde(rename = "E")]
    e: String,
    #[serde(rename = "LE")]
    le: String,
    #[serde(rename = "LE_plus")]
    le_plus: String,
    ordering_case: String,
    hyper: Option<bool>,
    border: Option<bool>,
    l_hyper: Option<bool>,
    l_border: Option<bool>,
    q_hyper: Option<bool>,
    q_border: Option<bool>,
    super_integral: Option<bool>,
    oracle_agrees: Option<bool>,
    warnings: String,
}

impl From<&ReportRow> for Record {
    fn from(r: &ReportRow) -> Self {
        let c = r.classification.map_or([None; 6], |f| f.map(Some));
        Record {
            p: r.p,
            m: r.m,
            n: r.n,
            order: r.order.to_string(),
            num_vertices: r.num_vertices.to_string(),
            num_edges: r.num_edges.to_string(),
            decomposition: r.decomposition.to_string(),
            e: fraction_string(&r.e),
            le: fraction_string(&r.le),
            le_plus: fraction_string(&r.le_plus),
            ordering_case: r.ordering_case.to_string(),
            hyper: c[0],
            border: c[1],
            l_hyper: c[2],
            l_border: c[3],
            q_hyper: c[4],
            q_border: c[5],
            super_integral: r.super_integral,
            oracle_agrees: r.oracle_agrees,
            warnings: r.warnings.join(";"),
        }
    }
}

fn field<T>(field: &'static str, value: &str, parsed: Option<T>) -> Result<T, ExportError> {
    parsed.ok_or_else(|| ExportError::Field { field, value: value.to_string() })
}

impl TryFrom<Record> for ReportRow {
    type Error = ExportError;

    fn try_from(r: Record) -> Result<Self, ExportError> {
        let uint = |name, s: &str| field(name, s, s.parse::<BigUint>().ok());
        let frac = |name, s: &str| field(name, s, parse_fraction(s));
        let flags = [r.hyper, r.border, r.l_hyper, r.l_border, r.q_hyper, r.q_border];
        let classification = match flags {
            [Some(a), Some(b), Some(c), Some(d), Some(e), Some(f)] => Some([a, b, c, d, e, f]),
            [None, None, None, None, None, None] => None,
            _ => return Err(ExportError::Field { field: "hyper", value: format!("{flags:?}") }),
        };
        Ok(ReportRow {
            p: r.p,
            m: r.m,
            n: r.n,
            order: uint("order", &r.order)?,
            num_vertices: uint("num_vertices", &r.num_vertices)?,
            num_edges: uint("num_edges", &r.num_edges)?,
            decomposition: field(
                "decomposition",
                &r.decomposition,
                r.decomposition.parse::<CliqueDecomposition>().ok(),
            )?,
            e: frac("E", &r.e)?,
            le: frac("LE", &r.le)?,
            le_plus: frac("LE_plus", &r.le_plus)?,
            ordering_case: field("ordering_case", &r.ordering_case, r.ordering_case.parse().ok())?,
            classification,
            super_integral: r.super_integral,
            oracle_agrees: r.oracle_agrees,
            warnings: if r.warnings.is_empty() {
                Vec::new()
            } else {
                r.warnings.split(';').map(str::to_string).collect()
            },
        })
    }
}

pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<(), ExportError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(COLUMNS)?;
    for r in rows {
        w.serialize(Record::from(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<ReportRow>, ExportError> {
    let mut rd = csv::Reader::from_reader(input);
    let header: Vec<String> = rd.headers()?.iter().map(str::to_string).collect();
    if header != COLUMNS {
        return Err(ExportError::Field { field: "header", value: header.join(",") });
    }
    rd.deserialize::<Record>().map(|rec| ReportRow::try_from(rec?)).collect()
}

pub fn write_json<W: Write>(rows: &[ReportRow], mut out: W) -> Result<(), ExportError> {
    let records: Vec<Record> = rows.iter().map(Record::from).collect();
    serde_json::to_writer_pretty(&mut out, &records)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn read_json<R: Read>(input: R) -> Result<Vec<ReportRow>, ExportError> {
    let records: Vec<Record> = serde_json::from_reader(input)?;
    records.into_iter().map(ReportRow::try_from).collect()
}

pub fn write_rows<W: Write>(rows: &[ReportRow], format: Format, out: W) -> Result<(), ExportError> {
    match format {
        Format::Csv => write_csv(rows, out),
        Format::Json => write_json(rows, out),
    }
}
