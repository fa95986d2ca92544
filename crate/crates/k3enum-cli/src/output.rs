//! Serialization helpers. Exact values are emitted as decimal strings,
//! never floats; JSON objects use sorted keys so identical invocations
//! produce byte-identical output.

use k3enum::curvecounts::{BpsTable, PairsEulerTable};
use k3enum::rational::{rational_from_strings, rational_to_strings, Rational};
use num::traits::One;
use serde_json::Value;

/// A rational as a two-element array of decimal strings [numerator, denominator].
pub fn rational_pair(x: &Rational) -> Value {
    let (n, d) = rational_to_strings(x);
    Value::Array(vec![Value::String(n), Value::String(d)])
}

/// Human rendering: plain integer, or n/d for proper fractions.
pub fn rational_display(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn rational_list_display(xs: &[Rational]) -> String {
    let parts: Vec<String> = xs.iter().map(rational_display).collect();
    format!("[{}]", parts.join(", "))
}

/// Parse "n" or "n/d" with optional sign into an exact rational.
pub fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    let mut parts = s.splitn(2, '/');
    let numer = parts.next().unwrap_or("").trim();
    let denom = parts.next().unwrap_or("1").trim();
    rational_from_strings(numer, denom)
}

/// BPS table as JSON: full rectangle, rows g = 0..g_max, columns h = 0..h_max,
/// entries as [num, den] string pairs (structural zeros included).
pub fn bps_table_json(table: &BpsTable) -> Value {
    let mut rows = Vec::new();
    for g in 0..=table.g_max() {
        let mut row = Vec::new();
        for h in 0..=table.h_max() {
            row.push(rational_pair(&table.r(g, h)));
        }
        rows.push(Value::Array(row));
    }
    serde_json::json!({
        "g_max": table.g_max(),
        "h_max": table.h_max(),
        "entries": rows,
    })
}

/// Euler-characteristic table as TSV: header `n\h`, one row per holomorphic
/// Euler number n from 1−h_max through n_max.
pub fn euler_table_tsv(table: &PairsEulerTable) -> String {
    let mut out = String::from("n\\h");
    for h in 0..=table.h_max() {
        out.push('\t');
        out.push_str(&h.to_string());
    }
    out.push('\n');
    for n in (1 - table.h_max())..=table.n_max() {
        out.push_str(&n.to_string());
        for h in 0..=table.h_max() {
            out.push('\t');
            out.push_str(&table.euler(n, h).to_string());
        }
        out.push('\n');
    }
    out
}
