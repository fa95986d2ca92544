//! The Gopakumar-Vafa multiple-cover transform and its inversion.
//!
//! For a primitive class α the genus potentials of the classes kα satisfy
//!
//!   Σ_g R_{g,k} u^{2g−2} = Σ_{d|k} (1/d) Σ_{g'} r_{g',k/d} (2 sin(du/2))^{2g'−2},
//!
//! an identity of Laurent series in u with exact rational coefficients.
//! Reading it top-down defines `gv_forward`; since (2 sin(u/2))^{2g−2} is
//! monic in its leading power u^{2g−2} and the divisor structure is
//! triangular in k, the system inverts uniquely over ℚ (`gv_invert`).

use super::CurveCountError;
use crate::rational::{rat, rational_from_strings, rational_to_strings, Rational};
use crate::series::LaurentSeries;
use num::traits::{One, Zero};
use serde_json::{json, Value};

/// The u-variable of the genus expansion.
pub const UVAR: &str = "u";

/// Gromov-Witten potentials R_{g,k}, genus 0..=g_max by degree 1..=k_max.
#[derive(Debug, Clone, PartialEq)]
pub struct GwPotentialTable {
    g_max: i64,
    k_max: i64,
    entries: Vec<Vec<Rational>>, // [g][k-1]
}

/// BPS counts r_{g,k} for the divisible classes kα, same index layout.
#[derive(Debug, Clone, PartialEq)]
pub struct DivisibleBpsTable {
    g_max: i64,
    k_max: i64,
    entries: Vec<Vec<Rational>>, // [g][k-1]
}

macro_rules! table_common {
    ($t:ty, $get:ident) => {
        impl $t {
            pub fn zero(g_max: i64, k_max: i64) -> Self {
                assert!(g_max >= 0 && k_max >= 1);
                Self {
                    g_max,
                    k_max,
                    entries: vec![vec![Rational::zero(); k_max as usize]; (g_max + 1) as usize],
                }
            }

            pub fn from_entries(g_max: i64, k_max: i64, entries: Vec<Vec<Rational>>) -> Self {
                assert_eq!(entries.len() as i64, g_max + 1);
                assert!(entries.iter().all(|row| row.len() as i64 == k_max));
                Self {
                    g_max,
                    k_max,
                    entries,
                }
            }

            pub fn g_max(&self) -> i64 {
                self.g_max
            }

            pub fn k_max(&self) -> i64 {
                self.k_max
            }

            pub fn $get(&self, g: i64, k: i64) -> Rational {
                assert!((0..=self.g_max).contains(&g) && (1..=self.k_max).contains(&k));
                self.entries[g as usize][(k - 1) as usize].clone()
            }

            pub fn set(&mut self, g: i64, k: i64, value: Rational) {
                assert!((0..=self.g_max).contains(&g) && (1..=self.k_max).contains(&k));
                self.entries[g as usize][(k - 1) as usize] = value;
            }

            /// {"g_max", "k_max", "entries": rows of [num, den] string pairs},
            /// row index genus, column index degree − 1.
            pub fn to_json_value(&self) -> Value {
                let rows: Vec<Value> = self
                    .entries
                    .iter()
                    .map(|row| {
                        Value::Array(
                            row.iter()
                                .map(|x| {
                                    let (n, d) = rational_to_strings(x);
                                    json!([n, d])
                                })
                                .collect(),
                        )
                    })
                    .collect();
                json!({"entries": rows, "g_max": self.g_max, "k_max": self.k_max})
            }

            pub fn from_json_value(v: &Value) -> Result<Self, String> {
                let g_max = v
                    .get("g_max")
                    .and_then(Value::as_i64)
                    .ok_or("missing integer field g_max")?;
                let k_max = v
                    .get("k_max")
                    .and_then(Value::as_i64)
                    .ok_or("missing integer field k_max")?;
                if g_max < 0 || k_max < 1 {
                    return Err(format!("invalid bounds g_max={g_max}, k_max={k_max}"));
                }
                let rows = v
                    .get("entries")
                    .and_then(Value::as_array)
                    .ok_or("missing array field entries")?;
                if rows.len() as i64 != g_max + 1 {
                    return Err(format!("expected {} rows", g_max + 1));
                }
                let mut entries = Vec::with_capacity(rows.len());
                for row in rows {
                    let cells = row.as_array().ok_or("entries rows must be arrays")?;
                    if cells.len() as i64 != k_max {
                        return Err(format!("expected {k_max} cells per row"));
                    }
                    let mut out = Vec::with_capacity(cells.len());
                    for cell in cells {
                        let pair = cell.as_array().filter(|p| p.len() == 2).ok_or(
                            "each entry must be a [numerator, denominator] string pair",
                        )?;
                        let n = pair[0].as_str().ok_or("numerator must be a string")?;
                        let d = pair[1].as_str().ok_or("denominator must be a string")?;
                        out.push(rational_from_strings(n, d)?);
                    }
                    entries.push(out);
                }
                Ok(Self::from_entries(g_max, k_max, entries))
            }
        }
    };
}

table_common!(GwPotentialTable, big_r);
table_common!(DivisibleBpsTable, r);

impl DivisibleBpsTable {
    pub fn is_integral(&self) -> bool {
        self.entries.iter().flatten().all(Rational::is_integer)
    }
}

/// (2 sin(du/2))^m as an exact Laurent series in u, for any even m (the
/// odd-power series would leave ℚ[[u]] only through its prefactor, which
/// never occurs here). 2 sin(du/2) = Σ_k (−1)^k d^{2k+1} u^{2k+1} / (4^k (2k+1)!).
pub fn sin_kernel(d: i64, m: i64, u_trunc: i64) -> LaurentSeries {
    assert!(d >= 1);
    assert!(m % 2 == 0, "only even powers stay rational");
    assert!(u_trunc >= 2, "the kernel needs its leading u term");
    let mut coeffs = vec![Rational::zero(); (u_trunc - 1) as usize];
    let mut k = 0i64;
    let mut factorial = Rational::one(); // (2k+1)! accumulated
    let mut d_power = rat(d); // d^{2k+1}
    let mut four_power = Rational::one(); // 4^k
    while 2 * k + 1 < u_trunc {
        if k > 0 {
            factorial *= rat(2 * k) * rat(2 * k + 1);
            d_power *= rat(d * d);
            four_power *= rat(4);
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        coeffs[(2 * k) as usize] = rat(sign) * &d_power / (&four_power * &factorial);
        k += 1;
    }
    LaurentSeries::new(UVAR, 1, u_trunc, coeffs).pow(m)
}

/// Assemble the genus potentials R_{g,k} for g ≤ g_max, k ≤ k_max from BPS
/// input. Requires u_trunc ≥ 2·g_max so the u^{2g_max−2} coefficient is in
/// window after the kernel powers.
pub fn gv_forward(
    bps: &DivisibleBpsTable,
    g_max: i64,
    k_max: i64,
    u_trunc: i64,
) -> GwPotentialTable {
    assert!(g_max >= 0 && k_max >= 1);
    assert!(u_trunc >= 2 * g_max, "u window too small for genus {g_max}");
    assert!(bps.k_max() >= k_max, "BPS table too narrow");
    let work = u_trunc + 3; // inverting the kernel costs three orders
    let mut out = GwPotentialTable::zero(g_max, k_max);
    for k in 1..=k_max {
        let mut potential = LaurentSeries::zero(UVAR, work - 3);
        for d in 1..=k {
            if k % d != 0 {
                continue;
            }
            for gp in 0..=bps.g_max() {
                let r = bps.r(gp, k / d);
                if r.is_zero() {
                    continue;
                }
                let kernel = sin_kernel(d, 2 * gp - 2, work);
                potential = potential.add(&kernel.scale(&(r / rat(d))));
            }
        }
        for g in 0..=g_max {
            out.set(g, k, potential.coeff(2 * g - 2));
        }
    }
    out
}

/// Recover BPS counts from genus potentials. Ascending in k, the d = 1 term
/// isolates Σ_g r_{g,k}(2 sin(u/2))^{2g−2} after subtracting the known
/// d > 1 contributions; ascending in g, each kernel is monic at its leading
/// power u^{2g−2}, so the extraction is a unitriangular solve.
pub fn gv_invert(gw: &GwPotentialTable) -> DivisibleBpsTable {
    let g_max = gw.g_max();
    let k_max = gw.k_max();
    let work = 2 * g_max + 3;
    let mut bps = DivisibleBpsTable::zero(g_max, k_max);
    for k in 1..=k_max {
        // Potential for class kα as a series in u.
        let mut remainder = LaurentSeries::zero(UVAR, work - 3);
        for g in 0..=g_max {
            let v = gw.big_r(g, k);
            if !v.is_zero() {
                remainder = remainder.add(&LaurentSeries::monomial(
                    UVAR,
                    v,
                    2 * g - 2,
                    work - 3,
                ));
            }
        }
        for d in 2..=k {
            if k % d != 0 {
                continue;
            }
            for gp in 0..=g_max {
                let r = bps.r(gp, k / d);
                if !r.is_zero() {
                    let kernel = sin_kernel(d, 2 * gp - 2, work);
                    remainder = remainder.sub(&kernel.scale(&(r / rat(d))));
                }
            }
        }
        for g in 0..=g_max {
            let r = remainder.coeff(2 * g - 2);
            if !r.is_zero() {
                bps.set(g, k, r.clone());
                remainder = remainder.sub(&sin_kernel(1, 2 * g - 2, work).scale(&r));
            }
        }
    }
    bps
}

/// gv_invert wrapped with the conjectural integrality check.
pub fn gv_invert_integral(gw: &GwPotentialTable) -> Result<DivisibleBpsTable, CurveCountError> {
    let bps = gv_invert(gw);
    for g in 0..=bps.g_max() {
        for k in 1..=bps.k_max() {
            let v = bps.r(g, k);
            if !v.is_integer() {
                return Err(CurveCountError::NonIntegralBps {
                    g,
                    k,
                    value: v.to_string(),
                });
            }
        }
    }
    Ok(bps)
}
