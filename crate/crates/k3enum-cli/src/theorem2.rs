//! Genus-0 assembly of fibered 3-fold invariants from K3 BPS counts and
//! user-supplied Noether-Lefschetz numbers:
//!
//!   n_{0,(d)} = Σ_{h≥0} Σ_{m≥1} r_{0,m,h} · NL_{m,h,(d)}
//!
//! where r_{0,m,h} is the genus-0 count of a divisibility-m class of square
//! 2h-2. Norm-only dependence makes r_{0,m,h} = r_{0,h} whenever such a
//! class exists, i.e. when m² | h-1; otherwise r_{0,m,h} = 0.

use k3enum::curvecounts::DivisibleBpsTable;
use k3enum::rational::{rational_from_strings, Rational};
use num::Zero;
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoremError {
    #[error("NL input needs r_0 at h = {needed} but the table ends at h = {available}")]
    WindowMismatch { needed: i64, available: i64 },
    #[error("{0}")]
    InvalidInput(String),
}

/// One curve class (d_1, ..., d_r) with its window of NL numbers.
/// `entries[m-1][h]` holds NL_{m,h,(d)} for m = 1..=m_max, h = 0..=h_max.
#[derive(Debug, Clone, PartialEq)]
pub struct NlBlock {
    pub d: Vec<i64>,
    pub entries: Vec<Vec<Rational>>,
}

/// Parse {"blocks": [{"d": [int, ...], "entries": [[[num, den], ...], ...]}]}.
/// Rows index divisibility m starting at 1, columns index h starting at 0;
/// rows must be rectangular.
pub fn parse_nl_blocks(v: &Value) -> Result<Vec<NlBlock>, TheoremError> {
    let invalid = |msg: String| TheoremError::InvalidInput(msg);
    let blocks = v
        .get("blocks")
        .and_then(Value::as_array)
        .ok_or_else(|| invalid("missing array field blocks".into()))?;
    let mut out = Vec::with_capacity(blocks.len());
    for (i, block) in blocks.iter().enumerate() {
        let d_values = block
            .get("d")
            .and_then(Value::as_array)
            .ok_or_else(|| invalid(format!("block {i}: missing array field d")))?;
        if d_values.is_empty() {
            return Err(invalid(format!("block {i}: d must be nonempty")));
        }
        let mut d = Vec::with_capacity(d_values.len());
        for x in d_values {
            d.push(
                x.as_i64()
                    .ok_or_else(|| invalid(format!("block {i}: d entries must be integers")))?,
            );
        }
        let rows = block
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| invalid(format!("block {i}: missing array field entries")))?;
        let mut entries: Vec<Vec<Rational>> = Vec::with_capacity(rows.len());
        for (r, row) in rows.iter().enumerate() {
            let cells = row
                .as_array()
                .ok_or_else(|| invalid(format!("block {i}: entries row {r} must be an array")))?;
            if r > 0 && cells.len() != entries[0].len() {
                return Err(invalid(format!("block {i}: entries rows must be rectangular")));
            }
            let mut parsed = Vec::with_capacity(cells.len());
            for cell in cells {
                let pair = cell
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| {
                        invalid(format!(
                            "block {i}: each NL entry must be a [numerator, denominator] string pair"
                        ))
                    })?;
                let n = pair[0]
                    .as_str()
                    .ok_or_else(|| invalid(format!("block {i}: numerator must be a string")))?;
                let den = pair[1]
                    .as_str()
                    .ok_or_else(|| invalid(format!("block {i}: denominator must be a string")))?;
                parsed.push(rational_from_strings(n, den).map_err(|e| invalid(format!("block {i}: {e}")))?);
            }
            entries.push(parsed);
        }
        out.push(NlBlock { d, entries });
    }
    Ok(out)
}

/// The double sum for one class. The genus-0 row of `r0` holds r_{0,h} at
/// column h+1. Cells contribute r_{0,h} · NL_{m,h} when m² | h-1 and nothing
/// otherwise; zero NL entries and m-excluded cells never consult the table,
/// so the window check fires only where the product could be nonzero.
pub fn theorem2_assemble(r0: &DivisibleBpsTable, block: &NlBlock) -> Result<Rational, TheoremError> {
    let mut total = Rational::zero();
    for (row, nl_row) in block.entries.iter().enumerate() {
        let m = row as i64 + 1;
        for (col, nl) in nl_row.iter().enumerate() {
            let h = col as i64;
            if nl.is_zero() || (h - 1).rem_euclid(m * m) != 0 {
                continue;
            }
            if h + 1 > r0.k_max() {
                return Err(TheoremError::WindowMismatch {
                    needed: h,
                    available: r0.k_max() - 1,
                });
            }
            total += r0.r(0, h + 1) * nl;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use k3enum::rational::rat;
    use serde_json::json;

    /// r_{0,h} for h = 0..=5: the rational elliptic counts 1, 24, 324, ...
    fn r0_window() -> DivisibleBpsTable {
        DivisibleBpsTable::from_entries(
            0,
            6,
            vec![vec![rat(1), rat(24), rat(324), rat(3200), rat(25650), rat(176256)]],
        )
    }

    fn block(d: Vec<i64>, entries: Vec<Vec<Rational>>) -> NlBlock {
        NlBlock { d, entries }
    }

    #[test]
    fn all_zero_input_sums_to_zero() {
        let b = block(vec![1], vec![vec![rat(0); 40], vec![rat(0); 40]]);
        assert_eq!(theorem2_assemble(&r0_window(), &b).unwrap(), rat(0));
    }

    #[test]
    fn delta_input_reads_off_one_count() {
        let mut entries = vec![vec![rat(0); 6]];
        entries[0][3] = rat(1);
        let b = block(vec![2, 5], entries);
        assert_eq!(theorem2_assemble(&r0_window(), &b).unwrap(), rat(3200));
    }

    #[test]
    fn divisibility_two_reads_the_same_h() {
        // m = 2 contributes only where 4 | h-1; the count is r_{0,h} itself.
        let mut entries = vec![vec![rat(0); 6], vec![rat(0); 6]];
        entries[1][5] = rat(1);
        let b = block(vec![1], entries);
        assert_eq!(theorem2_assemble(&r0_window(), &b).unwrap(), rat(176256));
    }

    #[test]
    fn excluded_divisibility_contributes_nothing() {
        // h = 4 has h-1 = 3, not divisible by 4, so the m = 2 row is dead
        // there no matter the NL value.
        let mut entries = vec![vec![rat(0); 6], vec![rat(0); 6]];
        entries[1][4] = rat(7);
        let b = block(vec![1], entries);
        assert_eq!(theorem2_assemble(&r0_window(), &b).unwrap(), rat(0));
    }

    #[test]
    fn square_zero_row_is_live_for_every_m() {
        // h = 1 has h-1 = 0, divisible by every m².
        let mut entries = vec![vec![rat(0); 2]; 5];
        entries[4][1] = rat(3);
        let b = block(vec![1], entries);
        assert_eq!(theorem2_assemble(&r0_window(), &b).unwrap(), rat(72));
    }

    #[test]
    fn mixed_sum_matches_reversed_accumulation() {
        let entries = vec![
            vec![rat(2), rat(-1), rat(0), rat(5), rat(1), rat(0)],
            vec![rat(9), rat(4), rat(9), rat(9), rat(9), rat(7)],
            vec![rat(0), rat(6), rat(0), rat(0), rat(0), rat(0)],
        ];
        let b = block(vec![3, 1], entries.clone());
        let got = theorem2_assemble(&r0_window(), &b).unwrap();
        // Independent accumulation, columns outermost and reversed.
        let r0 = r0_window();
        let mut manual = Rational::zero();
        for h in (0..6i64).rev() {
            for m in (1..=3i64).rev() {
                if (h - 1).rem_euclid(m * m) == 0 {
                    manual += r0.r(0, h + 1) * &entries[(m - 1) as usize][h as usize];
                }
            }
        }
        // m=1 row: 2·1 - 1·24 + 5·3200 + 1·25650; m=2 at h∈{1,5}: 4·24 + 7·176256;
        // m=3 at h=1: 6·24.
        assert_eq!(got, rat(2 - 24 + 16000 + 25650 + 96 + 1233792 + 144));
        assert_eq!(got, manual);
    }

    #[test]
    fn nonzero_entry_past_the_window_is_an_error() {
        let mut entries = vec![vec![rat(0); 10]];
        entries[0][9] = rat(1);
        let b = block(vec![1], entries);
        assert_eq!(
            theorem2_assemble(&r0_window(), &b),
            Err(TheoremError::WindowMismatch { needed: 9, available: 5 })
        );
    }

    #[test]
    fn zero_and_excluded_entries_past_the_window_are_fine() {
        // Zero cells and m-excluded cells beyond the table must not trip the
        // window check; their products are exactly zero.
        let mut entries = vec![vec![rat(0); 12], vec![rat(0); 12]];
        entries[1][8] = rat(5); // h-1 = 7 not divisible by 4
        let b = block(vec![1], entries);
        assert_eq!(theorem2_assemble(&r0_window(), &b).unwrap(), rat(0));
    }

    #[test]
    fn parses_blocks_and_rejects_malformed_input() {
        let v = json!({
            "blocks": [
                {"d": [3, 4], "entries": [[["1", "1"], ["-7", "2"]]]},
                {"d": [1], "entries": []},
            ]
        });
        let blocks = parse_nl_blocks(&v).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].d, vec![3, 4]);
        assert_eq!(blocks[0].entries[0][1], rat(-7) / rat(2));
        assert!(blocks[1].entries.is_empty());

        for bad in [
            json!({}),
            json!({"blocks": [{"entries": []}]}),
            json!({"blocks": [{"d": [], "entries": []}]}),
            json!({"blocks": [{"d": [1], "entries": [[["1", "1"]], []]}]}),
            json!({"blocks": [{"d": [1], "entries": [[["1", "0"]]]}]}),
            json!({"blocks": [{"d": [1], "entries": [[["x", "1"]]]}]}),
            json!({"blocks": [{"d": [1.5], "entries": []}]}),
        ] {
            assert!(matches!(
                parse_nl_blocks(&bad),
                Err(TheoremError::InvalidInput(_))
            ));
        }
    }
}
