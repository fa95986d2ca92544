//! Exact rational scalars and small integer helpers.
//!
//! `Rational` is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator (both invariants are maintained by the backing
//! implementation). All series coefficients, table entries, and matrix
//! entries in this crate are `Rational` or `BigInt`; nothing is ever rounded.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

pub type Rational = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` in lowest terms. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// True when the fraction has denominator 1.
pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Exact integer value; panics when the denominator is not 1.
pub fn to_integer(x: &Rational) -> BigInt {
    assert!(is_integer(x), "expected an integer, got {x}");
    x.numer().clone()
}

/// Generalized binomial coefficient binom(e, k) for integer e (any sign),
/// k >= 0: e(e-1)...(e-k+1)/k!. Always an exact integer.
pub fn binomial(e: i64, k: u64) -> BigInt {
    let mut num = BigInt::one();
    for i in 0..k {
        num *= big(e) - big(i as i64);
    }
    let mut den = BigInt::one();
    for i in 1..=k {
        den *= big(i as i64);
    }
    let (q, r) = num::Integer::div_rem(&num, &den);
    assert!(r.is_zero(), "binomial({e},{k}) not integral");
    q
}

/// Floor of the nonnegative square root.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative {n}");
    n.sqrt()
}

/// Smallest rational upper bound we bother with for sqrt(x), x >= 0:
/// returns t with t^2 >= x. Used for exact enumeration ranges.
pub fn sqrt_upper_bound(x: &Rational) -> Rational {
    assert!(!x.is_negative(), "sqrt bound of negative {x}");
    // x = n/d; sqrt(x) = sqrt(n d)/d <= (isqrt(n d) + 1)/d.
    let nd = x.numer() * x.denom();
    Rational::new(isqrt(&nd) + 1, x.denom().clone())
}

/// Parse a decimal integer string into a BigInt (serialization helper).
pub fn parse_bigint(s: &str) -> Result<BigInt, String> {
    s.parse::<BigInt>().map_err(|e| format!("bad integer {s:?}: {e}"))
}

/// Rational from decimal numerator/denominator strings, validating sign and
/// lowest-terms normalization on re-emission rather than on input.
pub fn rational_from_strings(numer: &str, denom: &str) -> Result<Rational, String> {
    let n = parse_bigint(numer)?;
    let d = parse_bigint(denom)?;
    if d.is_zero() {
        return Err(format!("zero denominator in {numer}/{denom}"));
    }
    Ok(Rational::new(n, d))
}

/// Decimal (numerator, denominator) strings; denominator always positive.
pub fn rational_to_strings(x: &Rational) -> (String, String) {
    debug_assert!(x.denom().sign() != Sign::Minus);
    (x.numer().to_string(), x.denom().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_normalizes_sign_and_gcd() {
        let x = ratio(6, -4);
        assert_eq!(x.numer(), &big(-3));
        assert_eq!(x.denom(), &big(2));
    }

    #[test]
    fn binomial_negative_upper_index() {
        // binom(-24, k) = (-1)^k binom(23+k, 23)
        assert_eq!(binomial(-24, 0), big(1));
        assert_eq!(binomial(-24, 1), big(-24));
        assert_eq!(binomial(-24, 2), big(300));
        assert_eq!(binomial(-24, 3), big(-2600));
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(5, 6), big(0));
    }

    #[test]
    fn sqrt_upper_bound_is_sound() {
        for (n, d) in [(0i64, 1i64), (1, 1), (2, 1), (7, 3), (100, 7), (12345, 321)] {
            let x = ratio(n, d);
            let t = sqrt_upper_bound(&x);
            assert!(&t * &t >= x);
        }
    }

    #[test]
    fn string_round_trip() {
        let x = ratio(-141444, 12);
        let (n, d) = rational_to_strings(&x);
        let y = rational_from_strings(&n, &d).unwrap();
        assert_eq!(x, y);
    }
}
