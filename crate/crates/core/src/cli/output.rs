use num_complex::Complex64;
use serde::Serialize;
use serde_json::value::RawValue;

use super::config::{CommonArgs, Format};
use crate::groupops::PhaseSign;
use crate::rootdata::{CaseParams, Field};
use crate::specialfn::Status;
use crate::weights::Weight;

pub const CSV_HEADER: [&str; 11] =
    ["field", "p", "q", "l", "mu", "lambda_re", "lambda_im", "eta_re", "eta_im", "status", "method"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Closed,
    Recursive,
    Torus,
    Mc,
    Sphere,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Recursive => "recursive",
            Method::Torus => "torus",
            Method::Mc => "mc",
            Method::Sphere => "sphere",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub field: Field,
    pub p: usize,
    pub q: usize,
    pub l: i64,
    pub mu: Weight,
    pub lambda: Complex64,
    /// None at a pole.
    pub eta: Option<Complex64>,
    pub status: Status,
    pub method: Method,
}

impl ResultRow {
    pub fn new(case: &CaseParams, mu: &Weight, lambda: Complex64, eta: Option<Complex64>, status: Status, method: Method) -> Self {
        ResultRow {
            field: case.field,
            p: case.p,
            q: case.q,
            l: case.l,
            mu: mu.clone(),
            lambda,
            eta,
            status,
            method,
        }
    }
}

/// 17 significant digits, enough to round-trip any f64.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn raw_number(x: Option<f64>) -> Option<Box<RawValue>> {
    x.filter(|v| v.is_finite())
        .map(|v| RawValue::from_string(format_number(v)).expect("formatted float is valid JSON"))
}

#[derive(Serialize)]
struct JsonRow<'a> {
    field: Field,
    p: usize,
    q: usize,
    l: i64,
    mu: String,
    lambda_re: Option<Box<RawValue>>,
    lambda_im: Option<Box<RawValue>>,
    eta_re: Option<Box<RawValue>>,
    eta_im: Option<Box<RawValue>>,
    status: &'a str,
    method: &'a str,
}

impl<'a> From<&'a ResultRow> for JsonRow<'a> {
    fn from(row: &'a ResultRow) -> Self {
        JsonRow {
            field: row.field,
            p: row.p,
            q: row.q,
            l: row.l,
            mu: row.mu.label(),
            lambda_re: raw_number(Some(row.lambda.re)),
            lambda_im: raw_number(Some(row.lambda.im)),
            eta_re: raw_number(row.eta.map(|z| z.re)),
            eta_im: raw_number(row.eta.map(|z| z.im)),
            status: row.status.as_str(),
            method: row.method.as_str(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Metadata<'a> {
    pub command: &'a str,
    pub config: &'a CommonArgs,
    pub seed: Option<u64>,
    pub kernel_phase_sign: &'static str,
    pub version: &'static str,
}

impl<'a> Metadata<'a> {
    pub fn new(command: &'a str, config: &'a CommonArgs) -> Self {
        Metadata {
            command,
            config,
            seed: config.seed,
            kernel_phase_sign: phase_sign_label(PhaseSign::default()),
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

pub fn phase_sign_label(sign: PhaseSign) -> &'static str {
    match sign {
        PhaseSign::Plus => "+1",
        PhaseSign::Minus => "-1",
    }
}

fn csv_error(e: csv::Error) -> String {
    format!("csv output failed: {e}")
}

fn csv_finish(writer: csv::Writer<Vec<u8>>) -> Result<String, String> {
    let bytes = writer.into_inner().map_err(|e| format!("csv output failed: {e}"))?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

/// Render spectrum rows in the requested format.
pub fn render_rows(rows: &[ResultRow], format: Format, metadata: &Metadata) -> Result<String, String> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER).map_err(csv_error)?;
            for row in rows {
                let eta = |part: fn(&Complex64) -> f64| row.eta.map(|z| format_number(part(&z))).unwrap_or_default();
                w.write_record([
                    row.field.to_string(),
                    row.p.to_string(),
                    row.q.to_string(),
                    row.l.to_string(),
                    row.mu.label(),
                    format_number(row.lambda.re),
                    format_number(row.lambda.im),
                    eta(|z| z.re),
                    eta(|z| z.im),
                    row.status.as_str().to_string(),
                    row.method.as_str().to_string(),
                ])
                .map_err(csv_error)?;
            }
            csv_finish(w)
        }
        Format::Json => {
            let rows: Vec<JsonRow> = rows.iter().map(JsonRow::from).collect();
            let doc = serde_json::json!({ "metadata": metadata, "rows": rows });
            serde_json::to_string_pretty(&doc).map(|s| s + "\n").map_err(|e| e.to_string())
        }
    }
}

#[derive(Serialize)]
struct LatticeRow {
    field: Field,
    p: usize,
    q: usize,
    l: i64,
    mu: String,
    degree: i64,
}

/// Render an enumerated weight list.
pub fn render_lattice(case: &CaseParams, weights: &[Weight], format: Format, metadata: &Metadata) -> Result<String, String> {
    let rows: Vec<LatticeRow> = weights
        .iter()
        .map(|w| LatticeRow { field: case.field, p: case.p, q: case.q, l: case.l, mu: w.label(), degree: w.total() })
        .collect();
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            w.write_record(["field", "p", "q", "l", "mu", "degree"]).map_err(csv_error)?;
            for row in &rows {
                w.serialize(row).map_err(csv_error)?;
            }
            csv_finish(w)
        }
        Format::Json => {
            let doc = serde_json::json!({ "metadata": metadata, "rows": rows });
            serde_json::to_string_pretty(&doc).map(|s| s + "\n").map_err(|e| e.to_string())
        }
    }
}
