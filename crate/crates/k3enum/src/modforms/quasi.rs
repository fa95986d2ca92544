//! Recognition of quasimodular forms of level 1.
//!
//! The ring of quasimodular forms for SL(2,ℤ) is the polynomial ring
//! ℚ[E₂, E₄, E₆]. A weight-w form is a linear combination of the monomials
//! E₂^a E₄^b E₆^c with 2a + 4b + 6c = w; recognition solves for the
//! coefficients by exact linear algebra and then re-expands the candidate
//! against every available input coefficient, so at least ten surplus
//! coefficients beyond the solve must be present.

use super::{eisenstein, ModformError, QVAR};
use crate::rational::Rational;
use crate::series::LaurentSeries;
use num::traits::Zero;

/// A representation s = Σ coeff · E₂^a E₄^b E₆^c, all monomials of one weight.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasimodularDecomposition {
    pub weight: i64,
    /// (a, b, c) exponent triples paired with their rational coefficients;
    /// every triple satisfies 2a + 4b + 6c = weight.
    pub terms: Vec<((u32, u32, u32), Rational)>,
}

impl QuasimodularDecomposition {
    /// Re-expand the combination as a q-series to the given order.
    pub fn expand(&self, q_trunc: i64) -> LaurentSeries {
        let e2 = eisenstein(2, q_trunc).expect("weight 2 is valid").series;
        let e4 = eisenstein(4, q_trunc).expect("weight 4 is valid").series;
        let e6 = eisenstein(6, q_trunc).expect("weight 6 is valid").series;
        let mut acc = LaurentSeries::zero(QVAR, q_trunc);
        for ((a, b, c), coeff) in &self.terms {
            let m = e2
                .pow(*a as i64)
                .mul(&e4.pow(*b as i64))
                .mul(&e6.pow(*c as i64));
            acc = acc.add(&m.scale(coeff));
        }
        acc
    }
}

/// All exponent triples (a, b, c) with 2a + 4b + 6c = weight, ordered
/// lexicographically by (a, b, c).
pub fn weight_monomials(weight: i64) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    if weight < 0 || weight % 2 != 0 {
        return out;
    }
    for a in 0..=(weight / 2) {
        for b in 0..=((weight - 2 * a) / 4) {
            let rest = weight - 2 * a - 4 * b;
            if rest % 6 == 0 {
                out.push((a as u32, b as u32, (rest / 6) as u32));
            }
        }
    }
    out
}

/// Write `s` in the monomial basis of weight-`weight` quasimodular forms.
///
/// Requires a power series with at least (#monomials + 10) known
/// coefficients. The full coefficient window participates in the solve, so
/// the surplus rows act as verification; any inconsistency is an error, and
/// the result is additionally re-expanded and compared windowwise.
pub fn quasimodular_recognize(
    s: &LaurentSeries,
    weight: i64,
) -> Result<QuasimodularDecomposition, ModformError> {
    if weight < 0 || weight % 2 != 0 {
        return Err(ModformError::InvalidWeight(weight));
    }
    if s.min_exponent() < 0 && !s.window(s.min_exponent(), 0).iter().all(Rational::is_zero) {
        return Err(ModformError::NotAPowerSeries);
    }
    let monomials = weight_monomials(weight);
    let k = monomials.len();
    let avail = s.truncation();
    let needed = k as i64 + 10;
    if avail < needed {
        return Err(ModformError::InsufficientTruncation {
            needed,
            available: avail,
        });
    }

    let e2 = eisenstein(2, avail).expect("weight 2 is valid").series;
    let e4 = eisenstein(4, avail).expect("weight 4 is valid").series;
    let e6 = eisenstein(6, avail).expect("weight 6 is valid").series;
    let columns: Vec<LaurentSeries> = monomials
        .iter()
        .map(|(a, b, c)| {
            e2.pow(*a as i64)
                .mul(&e4.pow(*b as i64))
                .mul(&e6.pow(*c as i64))
        })
        .collect();

    // Augmented system: one row per known q-exponent, eliminated exactly.
    let rows = avail as usize;
    let mut aug: Vec<Vec<Rational>> = (0..rows)
        .map(|n| {
            let mut row: Vec<Rational> =
                columns.iter().map(|col| col.coeff(n as i64)).collect();
            row.push(s.coeff(n as i64));
            row
        })
        .collect();

    let mut pivot_rows = Vec::with_capacity(k);
    let mut next_row = 0usize;
    for col in 0..k {
        let Some(p) = (next_row..rows).find(|&r| !aug[r][col].is_zero()) else {
            // Monomials of a fixed weight are linearly independent, so with
            // enough rows every column gets a pivot; reaching this means the
            // window cannot determine the combination.
            return Err(ModformError::InsufficientTruncation {
                needed,
                available: avail,
            });
        };
        aug.swap(next_row, p);
        let inv = aug[next_row][col].recip();
        for x in aug[next_row][col..].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = aug[next_row].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r != next_row && !row[col].is_zero() {
                let factor = std::mem::replace(&mut row[col], Rational::zero());
                for c2 in col + 1..=k {
                    let delta = &factor * &pivot[c2];
                    row[c2] = &row[c2] - delta;
                }
            }
        }
        pivot_rows.push(next_row);
        next_row += 1;
    }
    // Every non-pivot row must have reduced to 0 = 0.
    if let Some(bad) = (next_row..rows).find(|&r| !aug[r][k].is_zero()) {
        return Err(ModformError::NotQuasimodular {
            weight,
            reason: format!("coefficient row {bad} is inconsistent with the solve"),
        });
    }

    let decomposition = QuasimodularDecomposition {
        weight,
        terms: monomials
            .into_iter()
            .enumerate()
            .map(|(i, m)| (m, aug[pivot_rows[i]][k].clone()))
            .collect(),
    };
    // Independent verification on the full window.
    if decomposition.expand(avail) != s.truncate_to(avail) {
        return Err(ModformError::NotQuasimodular {
            weight,
            reason: "re-expansion disagrees with the input window".into(),
        });
    }
    Ok(decomposition)
}
