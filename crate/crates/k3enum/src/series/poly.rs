//! Exact Laurent polynomials (no truncation) and the w-basis change.
//!
//! These appear as the inner-variable slices of bivariate products: the
//! coefficient of `q^h` in the expansions handled here is a finite Laurent
//! polynomial in `y` (or `z`) supported in `[-h, h]`.
//!
//! A symmetric slice `p` (`p(y) = p(1/y)`) has a unique expansion in powers
//! of `w = y + 2 + 1/y` (basis `Plus`) or `w' = y - 2 + 1/y` (basis
//! `Minus`): `w^g = (y+1)^(2g) / y^g` and `w'^g = (y-1)^(2g) / y^g` are
//! monic at both extreme exponents `±g`, so peeling the top degree
//! terminates and introduces no denominators beyond the input's. The two
//! bases absorb the half-integer substitutions `(√y - 1/√y)^2 = w'(y)` and
//! `(√(-y) - 1/√(-y))^2 = -w(y)`: every identity in scope becomes integral
//! in `w` or `w'`.

use crate::rational::{binomial, rat, Rational};
use num::{Signed, Zero};
use std::fmt;

/// Which quadratic symmetric unit to expand in: `Plus` is `y + 2 + 1/y`,
/// `Minus` is `y - 2 + 1/y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WBasis {
    Plus,
    Minus,
}

impl WBasis {
    fn alternating(self) -> bool {
        matches!(self, WBasis::Minus)
    }
}

/// Finite Laurent polynomial with exact coefficients, stored dense over its
/// support. Normal form: both extreme stored coefficients are nonzero; the
/// zero polynomial stores an empty list with `min_exponent` 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    min_exponent: i64,
    coeffs: Vec<Rational>,
}

impl LaurentPoly {
    pub fn new(min_exponent: i64, coeffs: Vec<Rational>) -> Self {
        Self::normalized(min_exponent, coeffs)
    }

    fn normalized(mut min_exponent: i64, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            coeffs.drain(..lead);
            min_exponent += lead as i64;
        }
        if coeffs.is_empty() {
            min_exponent = 0;
        }
        LaurentPoly { min_exponent, coeffs }
    }

    pub fn zero() -> Self {
        LaurentPoly { min_exponent: 0, coeffs: vec![] }
    }

    pub fn constant(value: Rational) -> Self {
        Self::normalized(0, vec![value])
    }

    pub fn monomial(value: Rational, exponent: i64) -> Self {
        Self::normalized(exponent, vec![value])
    }

    pub fn from_ints(min_exponent: i64, ints: &[i64]) -> Self {
        Self::normalized(min_exponent, ints.iter().map(|&n| rat(n)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Support bounds `(lowest, highest)` of the nonzero terms; `None` for 0.
    pub fn support(&self) -> Option<(i64, i64)> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some((self.min_exponent, self.min_exponent + self.coeffs.len() as i64 - 1))
        }
    }

    pub fn coeff(&self, n: i64) -> Rational {
        let i = n - self.min_exponent;
        if i < 0 || i >= self.coeffs.len() as i64 {
            Rational::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let min = self.min_exponent.min(rhs.min_exponent);
        let max = (self.min_exponent + self.coeffs.len() as i64)
            .max(rhs.min_exponent + rhs.coeffs.len() as i64);
        let mut coeffs = vec![Rational::zero(); (max - min).max(0) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.min_exponent - min) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.min_exponent - min) as usize + i] += c;
        }
        Self::normalized(min, coeffs)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            min_exponent: self.min_exponent,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::normalized(self.min_exponent, self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let min = self.min_exponent + rhs.min_exponent;
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::normalized(min, coeffs)
    }

    /// `p(1/y)`: reverses the support.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::normalized(-(self.min_exponent + self.coeffs.len() as i64 - 1), coeffs)
    }

    /// Whether `p(y) = p(1/y)`.
    pub fn is_symmetric(&self) -> bool {
        self == &self.reversed()
    }

    /// Number of nonzero terms (for tests/diagnostics).
    pub fn terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Display for LaurentPoly {
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
            match e {
                0 => write!(f, "{}", c.abs())?,
                1 => write!(f, "{}*y", c.abs())?,
                _ => write!(f, "{}*y^{e}", c.abs())?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `w^g` as a Laurent polynomial: `(y ± 1)^(2g) / y^g`.
pub fn w_power(basis: WBasis, g: u64) -> LaurentPoly {
    let mut coeffs = Vec::with_capacity(2 * g as usize + 1);
    for i in 0..=(2 * g) {
        let mut c = binomial(2 * g as i64, i);
        if basis.alternating() && i % 2 == 1 {
            c = -c;
        }
        coeffs.push(Rational::from_integer(c));
    }
    LaurentPoly::new(-(g as i64), coeffs)
}

/// Expand a symmetric Laurent polynomial in powers of the chosen `w`:
/// returns `[c_0, ..., c_d]` with `p = Σ c_g w^g` and `d` = top exponent of
/// `p`. Panics when `p` is not symmetric (callers produce slices of
/// symmetric products, so asymmetry is a logic error upstream).
pub fn symmetric_to_w(p: &LaurentPoly, basis: WBasis) -> Vec<Rational> {
    assert!(p.is_symmetric(), "symmetric_to_w needs p(y) = p(1/y), got {p}");
    let mut rest = p.clone();
    let degree = match rest.support() {
        None => return vec![],
        Some((_, hi)) => hi,
    };
    assert!(degree >= 0, "symmetric support must straddle 0");
    let mut out = vec![Rational::zero(); degree as usize + 1];
    while let Some((_, hi)) = rest.support() {
        let g = hi.max(0) as usize;
        let c = rest.coeff(hi.max(0));
        out[g] = c.clone();
        rest = rest.sub(&w_power(basis, g as u64).scale(&c));
        if g == 0 {
            break;
        }
    }
    assert!(rest.is_zero(), "w-basis peeling left a remainder: {rest}");
    out
}

/// Inverse of [`symmetric_to_w`]: assemble `Σ c_g w^g`.
pub fn w_to_symmetric(cs: &[Rational], basis: WBasis) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for (g, c) in cs.iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&w_power(basis, g as u64).scale(c));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn normal_form_trims_both_ends() {
        let p = LaurentPoly::from_ints(-2, &[0, 1, 2, 1, 0, 0]);
        assert_eq!(p.support(), Some((-1, 1)));
        assert!(LaurentPoly::from_ints(3, &[0, 0]).is_zero());
        assert_eq!(LaurentPoly::from_ints(3, &[0, 0]), LaurentPoly::zero());
    }

    #[test]
    fn product_of_units() {
        // (y + 1/y) * (y - 1/y) = y^2 - y^-2
        let a = LaurentPoly::from_ints(-1, &[1, 0, 1]);
        let b = LaurentPoly::from_ints(-1, &[-1, 0, 1]);
        assert_eq!(a.mul(&b), LaurentPoly::from_ints(-2, &[-1, 0, 0, 0, 1]));
    }

    #[test]
    fn symmetry_detection() {
        assert!(LaurentPoly::from_ints(-1, &[2, 20, 2]).is_symmetric());
        assert!(!LaurentPoly::from_ints(-1, &[2, 20, 3]).is_symmetric());
        assert!(LaurentPoly::zero().is_symmetric());
    }

    #[test]
    fn w_powers_are_monic_with_correct_middle() {
        // w = y + 2 + 1/y, w' = y - 2 + 1/y
        assert_eq!(w_power(WBasis::Plus, 1), LaurentPoly::from_ints(-1, &[1, 2, 1]));
        assert_eq!(w_power(WBasis::Minus, 1), LaurentPoly::from_ints(-1, &[1, -2, 1]));
        // w^2 = y^2 + 4y + 6 + 4/y + 1/y^2
        assert_eq!(w_power(WBasis::Plus, 2), LaurentPoly::from_ints(-2, &[1, 4, 6, 4, 1]));
    }

    #[test]
    fn kkv_slice_one_in_w_prime() {
        // 20 + 2z + 2/z = 4 + 2w' with w' = z - 2 + 1/z
        let p = LaurentPoly::from_ints(-1, &[2, 20, 2]);
        let cs = symmetric_to_w(&p, WBasis::Minus);
        assert_eq!(cs, vec![rat(24), rat(2)]);
        // and 20 - 2y - 2/y = 24 - 2w with w = y + 2 + 1/y
        let q = LaurentPoly::from_ints(-1, &[-2, 20, -2]);
        let cs = symmetric_to_w(&q, WBasis::Plus);
        assert_eq!(cs, vec![rat(24), rat(-2)]);
    }

    #[test]
    fn w_round_trip_exhaustive_small_degrees() {
        // every symmetric polynomial of degree <= 6 with a fixed coefficient
        // pattern round-trips through both bases
        for basis in [WBasis::Plus, WBasis::Minus] {
            for d in 0..=6i64 {
                let mut coeffs = vec![Rational::zero(); (2 * d + 1) as usize];
                for i in 0..=d {
                    let v = ratio(3 * i + 1, i + 2);
                    coeffs[(d - i) as usize] = v.clone();
                    coeffs[(d + i) as usize] = v;
                }
                let p = LaurentPoly::new(-d, coeffs);
                let cs = symmetric_to_w(&p, basis);
                assert_eq!(cs.len() as i64, d + 1);
                assert_eq!(w_to_symmetric(&cs, basis), p);
            }
        }
    }

    #[test]
    #[should_panic(expected = "symmetric_to_w")]
    fn asymmetric_input_panics() {
        symmetric_to_w(&LaurentPoly::from_ints(0, &[1, 1]), WBasis::Plus);
    }
}
