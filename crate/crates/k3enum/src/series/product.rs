//! Uniform expansion of infinite products `∏_{n≥1} (1 - c·y^a·q^n)^e`.
//!
//! A [`ProductSpec`] is a list of factor families, each contributing one
//! factor per `n ≥ 1`. Expansion is truncated in the outer variable `q`;
//! the coefficient of `q^h` is an exact Laurent polynomial in the inner
//! variable. Factors with `n ≥ q_trunc` are congruent to 1 below the
//! truncation and are skipped. For every family in scope the `q^h` slice
//! has inner support within `[-h, h]` (each factor term `y^(ak) q^(nk)`
//! has `|ak| ≤ nk`); this is asserted after expansion.

use super::poly::LaurentPoly;
use super::LaurentSeries;
use crate::rational::{binomial, Rational};
use num::One;

/// One family `∏_{n≥1} (1 - sign · y^inner_exponent · q^n)^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorFamily {
    /// Power `a` of the inner variable inside the factor (0, +1, -1, ...).
    pub inner_exponent: i64,
    /// `+1` for factors `(1 - y^a q^n)`, `-1` for `(1 + y^a q^n)`.
    pub sign: i64,
    /// Integer exponent `e` of the whole factor (e.g. -24, -20, -2, 2).
    pub exponent: i64,
}

impl FactorFamily {
    pub fn new(inner_exponent: i64, sign: i64, exponent: i64) -> Self {
        assert!(sign == 1 || sign == -1, "factor sign must be ±1, got {sign}");
        FactorFamily { inner_exponent, sign, exponent }
    }
}

/// A finite list of factor families sharing outer and inner variables.
#[derive(Debug, Clone)]
pub struct ProductSpec {
    pub outer_variable: String,
    pub inner_variable: String,
    pub families: Vec<FactorFamily>,
}

impl ProductSpec {
    pub fn new(
        outer_variable: impl Into<String>,
        inner_variable: impl Into<String>,
        families: Vec<FactorFamily>,
    ) -> Self {
        ProductSpec {
            outer_variable: outer_variable.into(),
            inner_variable: inner_variable.into(),
            families,
        }
    }
}

/// Power series in the outer variable whose coefficients are exact Laurent
/// polynomials in the inner variable. Slice `h` is the coefficient of
/// `outer^h`; slices exist for `0 ≤ h < truncation`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiSeries {
    outer_variable: String,
    inner_variable: String,
    slices: Vec<LaurentPoly>,
}

impl BiSeries {
    pub fn new(
        outer_variable: impl Into<String>,
        inner_variable: impl Into<String>,
        slices: Vec<LaurentPoly>,
    ) -> Self {
        BiSeries {
            outer_variable: outer_variable.into(),
            inner_variable: inner_variable.into(),
            slices,
        }
    }

    pub fn truncation(&self) -> i64 {
        self.slices.len() as i64
    }

    pub fn outer_variable(&self) -> &str {
        &self.outer_variable
    }

    pub fn inner_variable(&self) -> &str {
        &self.inner_variable
    }

    pub fn slice(&self, h: i64) -> &LaurentPoly {
        assert!(
            (0..self.truncation()).contains(&h),
            "slice {h} outside window [0, {})",
            self.truncation()
        );
        &self.slices[h as usize]
    }

    /// Collapse to a univariate series in the outer variable; every slice
    /// must be constant in the inner variable.
    pub fn into_univariate(self) -> LaurentSeries {
        let trunc = self.truncation();
        let coeffs = self
            .slices
            .into_iter()
            .enumerate()
            .map(|(h, s)| {
                assert!(
                    s.support().map_or(true, |(lo, hi)| lo == 0 && hi == 0),
                    "slice {h} is not constant in {}",
                    self.inner_variable
                );
                s.coeff(0)
            })
            .collect();
        LaurentSeries::new(self.outer_variable, 0, trunc, coeffs)
    }
}

/// Expand the product to outer truncation `q_trunc` (slices `0..q_trunc`).
pub fn product_expand(spec: &ProductSpec, q_trunc: i64) -> BiSeries {
    assert!(q_trunc >= 0, "negative truncation {q_trunc}");
    let len = q_trunc as usize;
    let mut slices = vec![LaurentPoly::zero(); len];
    if len > 0 {
        slices[0] = LaurentPoly::constant(Rational::one());
    }
    for family in &spec.families {
        for n in 1..q_trunc {
            // (1 - c y^a q^n)^e = Σ_k binomial(e,k) (-c)^k y^(ak) q^(nk)
            let terms: Vec<(i64, LaurentPoly)> = (1..)
                .map(|k: i64| k * n)
                .take_while(|&qexp| qexp < q_trunc)
                .enumerate()
                .map(|(i, qexp)| {
                    let k = i as u64 + 1;
                    let mut c = binomial(family.exponent, k);
                    if family.sign < 0 && k % 2 == 1 {
                        c = -c;
                    }
                    if k % 2 == 1 {
                        c = -c;
                    }
                    let mono = LaurentPoly::monomial(
                        Rational::from_integer(c),
                        family.inner_exponent * k as i64,
                    );
                    (qexp, mono)
                })
                .collect();
            // in-place multiply, descending h so old lower slices survive
            for h in (n..q_trunc).rev() {
                let mut acc = slices[h as usize].clone();
                for (qexp, mono) in &terms {
                    if *qexp > h {
                        break;
                    }
                    let lower = &slices[(h - qexp) as usize];
                    if !lower.is_zero() && !mono.is_zero() {
                        acc = acc.add(&lower.mul(mono));
                    }
                }
                slices[h as usize] = acc;
            }
        }
    }
    for (h, s) in slices.iter().enumerate() {
        if let Some((lo, hi)) = s.support() {
            assert!(
                -(h as i64) <= lo && hi <= h as i64,
                "slice {h} has inner support [{lo}, {hi}] outside [-{h}, {h}]"
            );
        }
    }
    BiSeries::new(spec.outer_variable.clone(), spec.inner_variable.clone(), slices)
}
