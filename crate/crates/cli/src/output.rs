//! Text, JSON and CSV renderings. Every function returns the full document
//! with a trailing newline so `--out` files compare byte for byte.

use num_rational::BigRational;
use serde_json::{json, Value};

use quasimod::verify::VerificationReport;
use quasimod::TruncatedSeries;

use crate::targets::Table;
use crate::Format;

fn rational_json(c: &BigRational) -> Value {
    json!({ "num": c.numer().to_string(), "den": c.denom().to_string() })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

pub fn series(target: &str, s: &TruncatedSeries, format: Format) -> String {
    match format {
        Format::Text => s
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, c)| format!("{n} {c}\n"))
            .collect(),
        Format::Csv => {
            let mut out = String::from("n,num,den\n");
            for (n, c) in s.coeffs().iter().enumerate() {
                out.push_str(&format!("{n},{},{}\n", c.numer(), c.denom()));
            }
            out
        }
        Format::Json => pretty(&json!({
            "target": target,
            "order": s.order(),
            "coefficients": s.coeffs().iter().map(rational_json).collect::<Vec<_>>(),
        })),
    }
}

pub fn residues(target: &str, modulus: u64, r: &[u64], format: Format) -> String {
    match format {
        Format::Text => r
            .iter()
            .enumerate()
            .map(|(n, c)| format!("{n} {c}\n"))
            .collect(),
        Format::Csv => {
            let mut out = String::from("n,residue\n");
            for (n, c) in r.iter().enumerate() {
                out.push_str(&format!("{n},{c}\n"));
            }
            out
        }
        Format::Json => pretty(&json!({
            "target": target,
            "order": r.len() - 1,
            "modulus": modulus,
            "residues": r,
        })),
    }
}

pub fn table(t: &Table, format: Format) -> String {
    match (t, format) {
        (Table::Triple(table), Format::Csv) => table.to_csv(),
        (Table::Triple(table), Format::Text) => table
            .entries()
            .iter()
            .map(|(&(a, b, c), v)| format!("{a} {b} {c} {v}\n"))
            .collect(),
        (Table::Triple(table), Format::Json) => pretty(&Value::Array(
            table
                .entries()
                .iter()
                .map(|(&(a, b, c), v)| {
                    json!({ "alpha": a, "beta": b, "gamma": c, "value": rational_json(v) })
                })
                .collect(),
        )),
        (Table::Indexed(rows), Format::Csv) => {
            let mut out = String::from("index,num,den\n");
            for (i, v) in rows {
                out.push_str(&format!("{i},{},{}\n", v.numer(), v.denom()));
            }
            out
        }
        (Table::Indexed(rows), Format::Text) => {
            rows.iter().map(|(i, v)| format!("{i} {v}\n")).collect()
        }
        (Table::Indexed(rows), Format::Json) => pretty(&Value::Array(
            rows.iter()
                .map(|(i, v)| json!({ "index": i, "value": rational_json(v) }))
                .collect(),
        )),
    }
}

/// `as_array` forces a JSON array even for a single report.
pub fn reports(reports: &[VerificationReport], format: Format, as_array: bool) -> String {
    match format {
        Format::Json => {
            let v = if as_array || reports.len() != 1 {
                serde_json::to_value(reports)
            } else {
                serde_json::to_value(&reports[0])
            };
            pretty(&v.expect("reports always serialize"))
        }
        Format::Csv => {
            let mut out = String::from("identity_id,order,status,mismatch_n,lhs,rhs,elapsed_ms\n");
            for r in reports {
                let (n, lhs, rhs) = match &r.first_mismatch {
                    Some(m) => (m.n.to_string(), csv_field(&m.lhs), csv_field(&m.rhs)),
                    None => (String::new(), String::new(), String::new()),
                };
                out.push_str(&format!(
                    "{},{},{},{n},{lhs},{rhs},{}\n",
                    r.identity_id,
                    r.order,
                    r.status.as_str(),
                    r.elapsed_ms
                ));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                out.push_str(&format!(
                    "{:<34} {:<22} order {:<5} {} ms\n",
                    r.identity_id,
                    r.status.as_str(),
                    r.order,
                    r.elapsed_ms
                ));
                if let Some(m) = &r.first_mismatch {
                    out.push_str(&format!(
                        "    first mismatch at q^{}: {} != {}\n",
                        m.n, m.lhs, m.rhs
                    ));
                }
                if let Some(note) = &r.note {
                    out.push_str(&format!("    note: {note}\n"));
                }
            }
            out
        }
    }
}
