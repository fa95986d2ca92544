//! Randomized algebraic properties of the truncated series ring. Exactness
//! means every law is an equality of coefficient vectors, not an
//! approximation; the only subtlety is the truncation window each operation
//! can soundly report, so laws whose two sides carry different windows are
//! compared on the common one.

use k3enum::rational::{ratio, Rational};
use k3enum::series::{
    product_expand, symmetric_to_w, w_to_symmetric, FactorFamily, LaurentPoly, LaurentSeries,
    ProductSpec, WBasis,
};
use num::Zero;
use proptest::prelude::*;

fn arb_coeff() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=9).prop_map(|(n, d)| ratio(n, d))
}

/// Series with an arbitrary window, arbitrary coefficients.
fn arb_series() -> impl Strategy<Value = LaurentSeries> {
    (-5i64..=5, prop::collection::vec(arb_coeff(), 1..10))
        .prop_map(|(min, coeffs)| {
            let t = min + coeffs.len() as i64;
            LaurentSeries::new("q", min, t, coeffs)
        })
}

/// Series whose leading coefficient is nonzero (invertible on its window).
fn arb_unit_series() -> impl Strategy<Value = LaurentSeries> {
    (
        -5i64..=5,
        (1i64..=30, 1i64..=9),
        prop::collection::vec(arb_coeff(), 0..9),
    )
        .prop_map(|(min, (ln, ld), tail)| {
            let mut coeffs = vec![ratio(ln, ld)];
            coeffs.extend(tail);
            let t = min + coeffs.len() as i64;
            LaurentSeries::new("q", min, t, coeffs)
        })
}

/// Exact equality on the largest window both sides know.
fn eq_common_window(x: &LaurentSeries, y: &LaurentSeries) -> bool {
    let t = x.truncation().min(y.truncation());
    x.truncate_to(t) == y.truncate_to(t)
}

proptest! {
    #[test]
    fn addition_is_commutative_and_associative(
        a in arb_series(), b in arb_series(), c in arb_series()
    ) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert!(eq_common_window(&a.add(&b).add(&c), &a.add(&b.add(&c))));
    }

    #[test]
    fn multiplication_is_commutative_and_associative(
        a in arb_unit_series(), b in arb_unit_series(), c in arb_unit_series()
    ) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(eq_common_window(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c))));
    }

    #[test]
    fn multiplication_distributes_over_addition(
        a in arb_unit_series(), b in arb_series(), c in arb_series()
    ) {
        let lhs = a.mul(&b.add(&c));
        let rhs = a.mul(&b).add(&a.mul(&c));
        prop_assert!(eq_common_window(&lhs, &rhs));
    }

    #[test]
    fn subtraction_inverts_addition(a in arb_series(), b in arb_series()) {
        let back = a.add(&b).sub(&b);
        prop_assert!(eq_common_window(&back, &a));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn series_times_inverse_is_one(a in arb_unit_series()) {
        let product = a.mul(&a.inv());
        let t = product.truncation();
        prop_assert_eq!(product, LaurentSeries::one("q", t));
    }

    #[test]
    fn euler_operator_is_a_derivation(a in arb_unit_series(), b in arb_unit_series()) {
        let lhs = a.mul(&b).q_d_dq();
        let rhs = a.q_d_dq().mul(&b).add(&a.mul(&b.q_d_dq()));
        prop_assert!(eq_common_window(&lhs, &rhs));
    }

    #[test]
    fn pow_matches_repeated_multiplication(a in arb_unit_series()) {
        prop_assert_eq!(a.pow(3), a.mul(&a).mul(&a));
        // a^-2 · a^2 = 1 on the common window.
        let product = a.pow(-2).mul(&a.pow(2));
        let t = product.truncation();
        prop_assert_eq!(product, LaurentSeries::one("q", t));
    }

    #[test]
    fn json_round_trip_is_identity(a in arb_series()) {
        let v = a.to_json_value();
        prop_assert_eq!(LaurentSeries::from_json_value(&v).unwrap(), a);
    }

    #[test]
    fn product_expansion_ignores_family_order(
        families in prop::collection::vec(
            (-1i64..=1, prop_oneof![Just(1i64), Just(-1i64)], (-4i64..=4).prop_filter("nonzero", |e| *e != 0)),
            1..5,
        ),
        rotate in 0usize..4,
    ) {
        let list: Vec<FactorFamily> = families
            .iter()
            .map(|&(a, s, e)| FactorFamily::new(a, s, e))
            .collect();
        let mut rotated = list.clone();
        let len = rotated.len().max(1);
        rotated.rotate_left(rotate % len);
        let forward = product_expand(&ProductSpec::new("q", "y", list), 8);
        let shuffled = product_expand(&ProductSpec::new("q", "y", rotated), 8);
        prop_assert_eq!(forward, shuffled);
    }

    #[test]
    fn w_basis_round_trips_symmetric_polynomials(
        degree in 0i64..=20,
        seeds in prop::collection::vec(arb_coeff(), 21),
        plus in any::<bool>(),
    ) {
        // Build an exactly symmetric Laurent polynomial of the given degree.
        let mut coeffs = vec![Rational::zero(); (2 * degree + 1) as usize];
        for i in 0..=degree {
            let v = seeds[i as usize].clone();
            coeffs[(degree - i) as usize] = v.clone();
            coeffs[(degree + i) as usize] = v;
        }
        let p = LaurentPoly::new(-degree, coeffs);
        let basis = if plus { WBasis::Plus } else { WBasis::Minus };
        let cs = symmetric_to_w(&p, basis);
        prop_assert_eq!(w_to_symmetric(&cs, basis), p);
    }
}

/// Recomputing at a higher truncation must reproduce every previously
/// reported coefficient unchanged.
#[test]
fn truncation_monotonicity_of_core_pipelines() {
    use k3enum::curvecounts::bryan_leung;
    use k3enum::modforms::{delta_series, eisenstein, f_series, j_series};

    let pairs: Vec<(LaurentSeries, LaurentSeries)> = vec![
        (
            eisenstein(2, 12).unwrap().series,
            eisenstein(2, 40).unwrap().series,
        ),
        (
            eisenstein(4, 12).unwrap().series,
            eisenstein(4, 40).unwrap().series,
        ),
        (delta_series(12), delta_series(40)),
        (j_series(12), j_series(40)),
        (f_series(12), f_series(40)),
        (bryan_leung(2, 12), bryan_leung(2, 40)),
    ];
    for (short, long) in &pairs {
        assert_eq!(short, &long.truncate_to(short.truncation()));
    }
}
