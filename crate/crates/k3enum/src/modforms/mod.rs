//! Level-1 modular objects: Bernoulli numbers, divisor sums, Eisenstein
//! series, the discriminant Δ, J = q·j, and f = E₄E₆/Δ.
//!
//! Everything is expanded as an exact `LaurentSeries` over ℚ in the
//! variable `q`. Eisenstein series are normalized to constant term 1, so
//! E₂ = 1 − 24Σσ₁(n)qⁿ, E₄ = 1 + 240Σσ₃(n)qⁿ, E₆ = 1 − 504Σσ₅(n)qⁿ.

pub mod harvey_moore;
pub mod quasi;

pub use harvey_moore::{
    harvey_moore_check, harvey_moore_verify, multiple_cover_sum, BiGrid, HarveyMooreReport,
};
pub use quasi::{quasimodular_recognize, QuasimodularDecomposition};

use crate::rational::{binomial, rat, Rational};
use crate::series::LaurentSeries;
use num::bigint::BigInt;
use num::traits::{One, Pow, Signed, Zero};
use std::sync::{Mutex, OnceLock};
use thiserror::Error;

/// The q-variable every series in this module is expanded in.
pub const QVAR: &str = "q";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModformError {
    #[error("Eisenstein/Bernoulli weight must be a positive even integer, got {0}")]
    InvalidWeight(i64),
    #[error("divisor sum requires n >= 1, got {0}")]
    InvalidDivisorIndex(i64),
    #[error("series has nonzero coefficients below q^0, not a power series")]
    NotAPowerSeries,
    #[error("need at least {needed} coefficients, series provides {available}")]
    InsufficientTruncation { needed: i64, available: i64 },
    #[error("series is not quasimodular of weight {weight}: {reason}")]
    NotQuasimodular { weight: i64, reason: String },
}

/// Exact Bernoulli number B_n for even n ≥ 2, by the recurrence
/// Σ_{j=0}^{n} C(n+1, j) B_j = 0 with B_0 = 1.
///
/// The cache holds B_0..B_max computed so far; fills are idempotent so
/// concurrent extension is safe.
pub fn bernoulli(n: i64) -> Result<Rational, ModformError> {
    if n < 2 || n % 2 != 0 {
        return Err(ModformError::InvalidWeight(n));
    }
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![Rational::one()]));
    let mut known = cache.lock().expect("bernoulli cache poisoned");
    while (known.len() as i64) <= n {
        let m = known.len() as i64; // next index to fill
        let mut acc = Rational::zero();
        for (j, bj) in known.iter().enumerate() {
            acc += Rational::from(binomial(m + 1, j as u64)) * bj;
        }
        known.push(-acc / rat(m + 1));
    }
    Ok(known[n as usize].clone())
}

/// σ_k(n) = Σ_{i|n} i^k, exact.
pub fn sigma(k: u32, n: i64) -> Result<BigInt, ModformError> {
    if n < 1 {
        return Err(ModformError::InvalidDivisorIndex(n));
    }
    let mut total = BigInt::zero();
    let mut i = 1i64;
    while i * i <= n {
        if n % i == 0 {
            total += BigInt::from(i).pow(k);
            let j = n / i;
            if j != i {
                total += BigInt::from(j).pow(k);
            }
        }
        i += 1;
    }
    Ok(total)
}

/// A normalized Eisenstein series: constant term 1, coefficient of qⁿ
/// equal to −(4k/B_{2k})·σ_{2k−1}(n) for weight 2k.
#[derive(Debug, Clone, PartialEq)]
pub struct EisensteinSeries {
    pub weight: i64,
    pub series: LaurentSeries,
}

/// E_{2k} expanded to the given truncation order.
pub fn eisenstein(weight: i64, q_trunc: i64) -> Result<EisensteinSeries, ModformError> {
    if weight < 2 || weight % 2 != 0 {
        return Err(ModformError::InvalidWeight(weight));
    }
    assert!(q_trunc >= 1, "need at least the constant term");
    let b = bernoulli(weight)?;
    let scale = -(rat(2 * weight) / b); // −4k/B_{2k} with 2k = weight
    let mut coeffs = Vec::with_capacity(q_trunc as usize);
    coeffs.push(Rational::one());
    for n in 1..q_trunc {
        coeffs.push(&scale * Rational::from(sigma(weight as u32 - 1, n)?));
    }
    Ok(EisensteinSeries {
        weight,
        series: LaurentSeries::new(QVAR, 0, q_trunc, coeffs),
    })
}

/// Δ = q·∏_{n≥1}(1 − qⁿ)^{24}, exactly, truncated at `q_trunc` (≥ 2).
pub fn delta_series(q_trunc: i64) -> LaurentSeries {
    assert!(q_trunc >= 2, "delta needs at least its leading term");
    eta24_quotient(q_trunc - 1).shift(1)
}

/// ∏_{n≥1}(1 − qⁿ)^{24} = Δ/q as a unit power series.
fn eta24_quotient(q_trunc: i64) -> LaurentSeries {
    use crate::series::{product_expand, FactorFamily, ProductSpec};
    let spec = ProductSpec::new(QVAR, "y", vec![FactorFamily::new(0, 1, 24)]);
    product_expand(&spec, q_trunc).into_univariate()
}

/// J = q·j = E₄³/(Δ/q), a power series 1 + 744q + 196884q² + …
pub fn j_series(q_trunc: i64) -> LaurentSeries {
    assert!(q_trunc >= 2, "J needs at least two terms to be meaningful");
    let e4 = eisenstein(4, q_trunc).expect("weight 4 is valid").series;
    e4.pow(3).mul(&eta24_quotient(q_trunc).inv())
}

/// f = E₄E₆/Δ = Σ_{n≥−1} c(n)qⁿ, truncated at `q_trunc` (≥ 1).
pub fn f_series(q_trunc: i64) -> LaurentSeries {
    assert!(q_trunc >= 1);
    let order = q_trunc + 2; // inverting Δ (valuation 1) costs two orders
    let e4 = eisenstein(4, order).expect("weight 4 is valid").series;
    let e6 = eisenstein(6, order).expect("weight 6 is valid").series;
    e4.mul(&e6).mul(&delta_series(order).inv())
}

/// True when every coefficient in the series window is an integer.
pub fn all_integral(s: &LaurentSeries) -> bool {
    s.window(s.min_exponent(), s.truncation())
        .iter()
        .all(|c| c.denom().abs().is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn bernoulli_small_values() {
        assert_eq!(bernoulli(2).unwrap(), ratio(1, 6));
        assert_eq!(bernoulli(4).unwrap(), ratio(-1, 30));
        assert_eq!(bernoulli(6).unwrap(), ratio(1, 42));
        assert_eq!(bernoulli(8).unwrap(), ratio(-1, 30));
        assert_eq!(bernoulli(12).unwrap(), ratio(-691, 2730));
    }

    #[test]
    fn bernoulli_rejects_odd_and_nonpositive() {
        assert!(matches!(bernoulli(3), Err(ModformError::InvalidWeight(3))));
        assert!(matches!(bernoulli(0), Err(ModformError::InvalidWeight(0))));
        assert!(matches!(bernoulli(-2), Err(ModformError::InvalidWeight(-2))));
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(1, 1).unwrap(), 1.into());
        assert_eq!(sigma(1, 6).unwrap(), 12.into());
        assert_eq!(sigma(3, 4).unwrap(), 73.into());
        assert_eq!(sigma(0, 12).unwrap(), 6.into());
        assert_eq!(sigma(9, 2).unwrap(), 513.into());
        assert!(sigma(1, 0).is_err());
    }

    #[test]
    fn eisenstein_first_coefficients() {
        let e2 = eisenstein(2, 8).unwrap();
        let e4 = eisenstein(4, 8).unwrap();
        let e6 = eisenstein(6, 8).unwrap();
        assert_eq!(e2.series.coeff(0), rat(1));
        assert_eq!(e2.series.coeff(1), rat(-24));
        assert_eq!(e4.series.coeff(1), rat(240));
        assert_eq!(e6.series.coeff(1), rat(-504));
        assert_eq!(e2.weight, 2);
        // E4 row against the direct 240·σ3 values.
        let want: [i64; 6] = [1, 240, 2160, 6720, 17520, 30240];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(e4.series.coeff(n as i64), rat(*w));
        }
    }

    #[test]
    fn eisenstein_rejects_bad_weight() {
        assert!(eisenstein(3, 5).is_err());
        assert!(eisenstein(0, 5).is_err());
    }

    #[test]
    fn delta_first_coefficients() {
        let d = delta_series(12);
        let want: [i64; 11] = [
            1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612,
        ];
        assert_eq!(d.coeff(0), rat(0));
        for (i, w) in want.iter().enumerate() {
            assert_eq!(d.coeff(i as i64 + 1), rat(*w), "delta q^{}", i + 1);
        }
        assert!(all_integral(&d));
    }

    #[test]
    fn j_first_coefficients() {
        let j = j_series(6);
        let want: [i64; 6] = [1, 744, 196884, 21493760, 864299970, 20245856256];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(j.coeff(n as i64), rat(*w), "J q^{n}");
        }
    }

    #[test]
    fn f_first_coefficients() {
        let f = f_series(5);
        assert_eq!(f.min_exponent(), -1);
        let want: [i64; 6] = [1, -240, -141444, -8529280, -238758390, -4303488384];
        for (i, w) in want.iter().enumerate() {
            assert_eq!(f.coeff(i as i64 - 1), rat(*w), "c({})", i as i64 - 1);
        }
        assert!(all_integral(&f));
    }

    #[test]
    fn discriminant_identity() {
        // E4^3 − E6^2 = 1728·Δ
        let n = 16;
        let e4 = eisenstein(4, n).unwrap().series;
        let e6 = eisenstein(6, n).unwrap().series;
        let lhs = e4.pow(3).sub(&e6.pow(2));
        assert_eq!(lhs, delta_series(n).scale(&rat(1728)));
    }

    #[test]
    fn ramanujan_derivations() {
        let n = 14;
        let e2 = eisenstein(2, n).unwrap().series;
        let e4 = eisenstein(4, n).unwrap().series;
        let e6 = eisenstein(6, n).unwrap().series;
        assert_eq!(
            e2.q_d_dq(),
            e2.pow(2).sub(&e4).scale(&ratio(1, 12)),
            "qd/dq E2 = (E2^2 - E4)/12"
        );
        assert_eq!(
            e4.q_d_dq(),
            e2.mul(&e4).sub(&e6).scale(&ratio(1, 3)),
            "qd/dq E4 = (E2 E4 - E6)/3"
        );
        assert_eq!(
            e6.q_d_dq(),
            e2.mul(&e6).sub(&e4.pow(2)).scale(&ratio(1, 2)),
            "qd/dq E6 = (E2 E6 - E4^2)/2"
        );
    }
}
