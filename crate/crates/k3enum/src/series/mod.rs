//! Truncated Laurent series with exact rational coefficients.
//!
//! A series stores a dense coefficient window `[min_exponent, truncation)`:
//! coefficients below `min_exponent` are exactly zero, coefficients at or
//! beyond `truncation` are unknown and can never be observed. Every
//! operation propagates the largest truncation that is sound for its
//! inputs, so a reported coefficient is always the true one:
//!
//! * `add`, `sub`: `min(t_a, t_b)`
//! * `mul`: `min(t_a + val_b, t_b + val_a)` where `val` is the exponent of
//!   the first nonzero known coefficient (the valuation); a factor that is
//!   zero on its whole window uses its truncation as the valuation,
//! * `inv`: `t - 2*val` (the unit part keeps its relative precision and the
//!   valuation is negated).
//!
//! Equality compares the mathematical content of the windows (leading
//! explicit zeros are irrelevant) and requires equal truncations.

mod json;
mod poly;
mod product;

pub use json::SeriesJsonError;
pub use poly::{symmetric_to_w, w_power, w_to_symmetric, LaurentPoly, WBasis};
pub use product::{product_expand, BiSeries, FactorFamily, ProductSpec};

use crate::rational::{rat, Rational};
use num::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone)]
pub struct LaurentSeries {
    variable: String,
    min_exponent: i64,
    truncation: i64,
    coeffs: Vec<Rational>,
}

impl LaurentSeries {
    /// Series with the given dense window. `coeffs[i]` is the coefficient of
    /// `variable^(min_exponent + i)`; the window must fill `[min, truncation)`.
    pub fn new(
        variable: impl Into<String>,
        min_exponent: i64,
        truncation: i64,
        coeffs: Vec<Rational>,
    ) -> Self {
        assert!(
            min_exponent <= truncation,
            "min_exponent {min_exponent} exceeds truncation {truncation}"
        );
        assert_eq!(
            coeffs.len() as i64,
            truncation - min_exponent,
            "dense window length mismatch"
        );
        LaurentSeries { variable: variable.into(), min_exponent, truncation, coeffs }
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_ints(
        variable: impl Into<String>,
        min_exponent: i64,
        truncation: i64,
        ints: &[i64],
    ) -> Self {
        Self::new(variable, min_exponent, truncation, ints.iter().map(|&n| rat(n)).collect())
    }

    pub fn zero(variable: impl Into<String>, truncation: i64) -> Self {
        LaurentSeries { variable: variable.into(), min_exponent: truncation, truncation, coeffs: vec![] }
    }

    pub fn constant(variable: impl Into<String>, value: Rational, truncation: i64) -> Self {
        Self::monomial(variable, value, 0, truncation)
    }

    /// `value * variable^exponent`, known up to `truncation`.
    pub fn monomial(
        variable: impl Into<String>,
        value: Rational,
        exponent: i64,
        truncation: i64,
    ) -> Self {
        assert!(exponent < truncation, "monomial exponent {exponent} not below truncation {truncation}");
        let mut coeffs = vec![Rational::zero(); (truncation - exponent) as usize];
        coeffs[0] = value;
        LaurentSeries { variable: variable.into(), min_exponent: exponent, truncation, coeffs }
    }

    /// The series `variable^1` truncated at `truncation`.
    pub fn var(variable: impl Into<String>, truncation: i64) -> Self {
        Self::monomial(variable, Rational::one(), 1, truncation)
    }

    pub fn one(variable: impl Into<String>, truncation: i64) -> Self {
        Self::constant(variable, Rational::one(), truncation)
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    pub fn min_exponent(&self) -> i64 {
        self.min_exponent
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    /// Coefficient of `variable^n`. Exactly zero below the window; asking at
    /// or beyond the truncation is a caller bug and panics.
    pub fn coeff(&self, n: i64) -> Rational {
        assert!(
            n < self.truncation,
            "coefficient {n} requested at/beyond truncation {} of a series in {}",
            self.truncation,
            self.variable
        );
        if n < self.min_exponent {
            Rational::zero()
        } else {
            self.coeffs[(n - self.min_exponent) as usize].clone()
        }
    }

    /// Exponent of the first nonzero known coefficient; `truncation` when the
    /// whole window is zero (the series is then zero as far as it is known).
    pub fn valuation(&self) -> i64 {
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                return self.min_exponent + i as i64;
            }
        }
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.valuation() == self.truncation
    }

    /// Forget coefficients at or beyond `order` (which must not exceed the
    /// current truncation: truncation can only shrink).
    pub fn truncate_to(&self, order: i64) -> Self {
        assert!(order <= self.truncation, "cannot extend truncation {} to {order}", self.truncation);
        let min = self.min_exponent.min(order);
        let keep = (order - min) as usize;
        LaurentSeries {
            variable: self.variable.clone(),
            min_exponent: min,
            truncation: order,
            coeffs: self.coeffs.iter().take(keep).cloned().collect(),
        }
    }

    fn assert_same_variable(&self, rhs: &Self, op: &str) {
        assert_eq!(
            self.variable, rhs.variable,
            "cannot {op} series in different variables ({} vs {})",
            self.variable, rhs.variable
        );
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_same_variable(rhs, "add");
        let truncation = self.truncation.min(rhs.truncation);
        let min = self.valuation().min(rhs.valuation()).min(truncation);
        let mut coeffs = vec![Rational::zero(); (truncation - min) as usize];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let n = min + i as i64;
            *c = self.coeff(n) + rhs.coeff(n);
        }
        LaurentSeries { variable: self.variable.clone(), min_exponent: min, truncation, coeffs }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        LaurentSeries { coeffs, ..self.clone() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c * k).collect();
        LaurentSeries { coeffs, ..self.clone() }
    }

    /// Cauchy product. The result is known for exponents below
    /// `min(t_a + val_b, t_b + val_a)`: past that point unknown coefficients
    /// of one factor could meet nonzero coefficients of the other.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.assert_same_variable(rhs, "multiply");
        let (va, vb) = (self.valuation(), rhs.valuation());
        let truncation = (self.truncation + vb).min(rhs.truncation + va);
        let min = (va + vb).min(truncation);
        let mut coeffs = vec![Rational::zero(); (truncation - min) as usize];
        for (i, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            let ea = self.min_exponent + i as i64;
            for (j, cb) in rhs.coeffs.iter().enumerate() {
                let e = ea + rhs.min_exponent + j as i64;
                if e >= truncation {
                    break;
                }
                if e >= min && !cb.is_zero() {
                    coeffs[(e - min) as usize] += ca * cb;
                }
            }
        }
        LaurentSeries { variable: self.variable.clone(), min_exponent: min, truncation, coeffs }
    }

    /// Multiplicative inverse. The leading known coefficient must be nonzero;
    /// the inverse of `c_v q^v (1 + ...)` has valuation `-v` and keeps the
    /// relative precision of the unit part, so truncation drops to `t - 2v`.
    pub fn inv(&self) -> Self {
        let v = self.valuation();
        assert!(
            v < self.truncation,
            "cannot invert a series in {} that is zero on its whole window",
            self.variable
        );
        let unit: Vec<Rational> =
            self.coeffs[(v - self.min_exponent) as usize..].to_vec();
        let order = unit.len(); // relative precision t - v
        let lead = unit[0].clone();
        let lead_inv = Rational::one() / lead;
        let mut out = vec![Rational::zero(); order];
        out[0] = lead_inv.clone();
        for n in 1..order {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !unit[k].is_zero() {
                    acc += &unit[k] * &out[n - k];
                }
            }
            out[n] = -acc * &lead_inv;
        }
        LaurentSeries {
            variable: self.variable.clone(),
            min_exponent: -v,
            truncation: self.truncation - 2 * v,
            coeffs: out,
        }
    }

    /// Integer power (negative exponents invert first). Truncation follows
    /// the product rule: `t + (k-1)*val` for every integer `k`.
    pub fn pow(&self, k: i64) -> Self {
        if k < 0 {
            return self.inv().pow(-k);
        }
        let v = self.valuation();
        if k == 0 {
            let t = self.truncation - v;
            return if t > 0 {
                Self::one(self.variable.clone(), t)
            } else {
                Self::zero(self.variable.clone(), t)
            };
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// The Euler operator q d/dq: multiplies the coefficient of `q^n` by `n`.
    pub fn q_d_dq(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * rat(self.min_exponent + i as i64))
            .collect();
        LaurentSeries { coeffs, ..self.clone() }
    }

    /// Multiply by `variable^k` (exact shift of the window).
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            variable: self.variable.clone(),
            min_exponent: self.min_exponent + k,
            truncation: self.truncation + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Dense coefficients of the window `[from, to)`, `to <= truncation`.
    pub fn window(&self, from: i64, to: i64) -> Vec<Rational> {
        (from..to).map(|n| self.coeff(n)).collect()
    }
}

impl PartialEq for LaurentSeries {
    /// Mathematical equality of the known windows: same variable, same
    /// truncation, same coefficient at every exponent below it.
    fn eq(&self, other: &Self) -> bool {
        if self.variable != other.variable || self.truncation != other.truncation {
            return false;
        }
        let lo = self.min_exponent.min(other.min_exponent);
        (lo..self.truncation).all(|n| self.coeff(n) == other.coeff(n))
    }
}

impl Eq for LaurentSeries {}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.min_exponent + i as i64;
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match e {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => write!(f, "{}", self.variable)?,
                1 => write!(f, "{a}*{}", self.variable)?,
                _ if a.is_one() => write!(f, "{}^{e}", self.variable)?,
                _ => write!(f, "{a}*{}^{e}", self.variable)?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.variable, self.truncation)
    }
}
