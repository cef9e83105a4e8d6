//! Report rows and their CSV / JSON serialization.
//!
//! Every float is rendered once, as a 12-significant-digit string; the JSON
//! writer parses those strings back so both formats carry identical values.

use std::io::Write;

use anyhow::Result;
use ckn_core::VerificationReport;
use serde::Serialize;

pub const COLUMNS: [&str; 13] = [
    "family",
    "N",
    "a",
    "b",
    "k",
    "beta_or_t",
    "quotient",
    "sharp_sq",
    "rel_error",
    "quad_residual",
    "pde_residual",
    "decay_ok",
    "passed",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub cells: [String; 13],
    pub passed: bool,
    pub error: Option<String>,
}

pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.11e}")
    }
}

impl Row {
    pub fn from_report(r: &VerificationReport) -> Self {
        let p = r.params;
        let b = if r.family.uses_b() { fmt_float(p.b) } else { String::new() };
        let k = if r.family == ckn_core::ExtremizerFamily::T2Kummer {
            r.k.to_string()
        } else {
            String::new()
        };
        Self {
            cells: [
                r.family.to_string(),
                p.n.to_string(),
                fmt_float(p.a),
                b,
                k,
                fmt_float(r.beta_or_t),
                fmt_float(r.quotient),
                fmt_float(r.sharp_constant_sq),
                fmt_float(r.rel_error),
                fmt_float(r.quad_identity_residual),
                fmt_float(r.pde_residual),
                r.decay_ok.to_string(),
                r.passed.to_string(),
            ],
            passed: r.passed,
            error: r.error.clone(),
        }
    }
}

pub fn write_csv<W: Write>(rows: &[Row], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(COLUMNS)?;
    for row in rows {
        w.write_record(&row.cells)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct JsonRow<'a> {
    family: &'a str,
    #[serde(rename = "N")]
    n: u64,
    a: Option<f64>,
    b: Option<f64>,
    k: Option<u64>,
    beta_or_t: Option<f64>,
    quotient: Option<f64>,
    sharp_sq: Option<f64>,
    rel_error: Option<f64>,
    quad_residual: Option<f64>,
    pde_residual: Option<f64>,
    decay_ok: bool,
    passed: bool,
}

/// Empty and non-finite cells become null.
fn num(cell: &str) -> Option<f64> {
    cell.parse::<f64>().ok().filter(|v| v.is_finite())
}

pub fn write_json<W: Write>(rows: &[Row], mut out: W) -> Result<()> {
    let items: Vec<JsonRow> = rows
        .iter()
        .map(|r| {
            let c = &r.cells;
            JsonRow {
                family: &c[0],
                n: c[1].parse().unwrap_or(0),
                a: num(&c[2]),
                b: num(&c[3]),
                k: c[4].parse().ok(),
                beta_or_t: num(&c[5]),
                quotient: num(&c[6]),
                sharp_sq: num(&c[7]),
                rel_error: num(&c[8]),
                quad_residual: num(&c[9]),
                pde_residual: num(&c[10]),
                decay_ok: c[11] == "true",
                passed: c[12] == "true",
            }
        })
        .collect();
    serde_json::to_writer_pretty(&mut out, &items)?;
    out.write_all(b"\n")?;
    Ok(())
}
