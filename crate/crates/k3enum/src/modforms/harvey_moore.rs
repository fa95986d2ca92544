//! Exact verification of the Harvey-Moore / Zagier identity
//!
//!   f(τ₁)E₄(τ₂)/(j(τ₁) − j(τ₂)) = q₁/(q₂ − q₁) + E₄(τ₂) − S,
//!   S = Σ_{d,k,ℓ>0} ℓ³ c(kℓ) q₁^{kd} q₂^{ℓd},
//!
//! where f = Σ c(n)qⁿ = E₄E₆/Δ. The rational function q₁/(q₂ − q₁) has no
//! joint power-series expansion, so the check multiplies through by
//! (j₁ − j₂)(q₁ − q₂)q₁q₂ and uses q₁q₂(j₁ − j₂) = q₂J₁ − q₁J₂ with
//! J = q·j, giving the equivalent identity of honest bivariate polynomials
//!
//!   (q₁f(q₁))·E₄(q₂)·(q₁ − q₂)·q₂
//!     = [−q₁ + (q₁ − q₂)(E₄(q₂) − S)]·(q₂J(q₁) − q₁J(q₂)).
//!
//! Both sides are expanded independently and compared cell by cell. The
//! sanity limit q₂ → 0 fixes the sign of the first term: the left side
//! vanishes there while q₁/(q₂ − q₁) + E₄(τ₂) → −1 + 1 = 0.

use super::{eisenstein, f_series, j_series};
use crate::rational::{rat, Rational};
use crate::series::LaurentSeries;
use num::traits::Zero;

/// Dense bivariate coefficient window: exponents 0..=n1 in q₁ by 0..=n2 in
/// q₂. Products are truncated back into the same window, which is exact for
/// every cell inside it.
#[derive(Debug, Clone, PartialEq)]
pub struct BiGrid {
    n1: i64,
    n2: i64,
    cells: Vec<Rational>,
}

impl BiGrid {
    pub fn new(n1: i64, n2: i64) -> Self {
        assert!(n1 >= 0 && n2 >= 0);
        BiGrid {
            n1,
            n2,
            cells: vec![Rational::zero(); ((n1 + 1) * (n2 + 1)) as usize],
        }
    }

    pub fn bounds(&self) -> (i64, i64) {
        (self.n1, self.n2)
    }

    fn idx(&self, i: i64, j: i64) -> usize {
        assert!(
            (0..=self.n1).contains(&i) && (0..=self.n2).contains(&j),
            "cell ({i},{j}) outside window ({},{})",
            self.n1,
            self.n2
        );
        (i * (self.n2 + 1) + j) as usize
    }

    /// Coefficient of q₁^i q₂^j.
    pub fn coeff(&self, i: i64, j: i64) -> Rational {
        self.cells[self.idx(i, j)].clone()
    }

    pub fn set(&mut self, i: i64, j: i64, value: Rational) {
        let at = self.idx(i, j);
        self.cells[at] = value;
    }

    pub fn add_assign(&mut self, i: i64, j: i64, value: Rational) {
        let at = self.idx(i, j);
        self.cells[at] += value;
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.n1, self.n2), (rhs.n1, rhs.n2));
        BiGrid {
            n1: self.n1,
            n2: self.n2,
            cells: self
                .cells
                .iter()
                .zip(&rhs.cells)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!((self.n1, self.n2), (rhs.n1, rhs.n2));
        let mut out = BiGrid::new(self.n1, self.n2);
        for a in 0..=self.n1 {
            for b in 0..=self.n2 {
                let x = &self.cells[self.idx(a, b)];
                if x.is_zero() {
                    continue;
                }
                for c in 0..=(self.n1 - a) {
                    for d in 0..=(self.n2 - b) {
                        let y = &rhs.cells[rhs.idx(c, d)];
                        if !y.is_zero() {
                            out.add_assign(a + c, b + d, x * y);
                        }
                    }
                }
            }
        }
        out
    }

    /// A power series in q₁ embedded as a grid (constant in q₂).
    pub fn from_series_q1(s: &LaurentSeries, n1: i64, n2: i64) -> Self {
        assert!(s.truncation() > n1, "series too short for the window");
        let mut g = BiGrid::new(n1, n2);
        for i in 0..=n1 {
            g.set(i, 0, s.coeff(i));
        }
        g
    }

    /// A power series in q₂ embedded as a grid (constant in q₁).
    pub fn from_series_q2(s: &LaurentSeries, n1: i64, n2: i64) -> Self {
        assert!(s.truncation() > n2, "series too short for the window");
        let mut g = BiGrid::new(n1, n2);
        for j in 0..=n2 {
            g.set(0, j, s.coeff(j));
        }
        g
    }

    /// Row-major (i, then j) scan for the first cell where the grids differ.
    pub fn first_difference(&self, rhs: &Self) -> Option<(i64, i64)> {
        assert_eq!((self.n1, self.n2), (rhs.n1, rhs.n2));
        for i in 0..=self.n1 {
            for j in 0..=self.n2 {
                if self.cells[self.idx(i, j)] != rhs.cells[rhs.idx(i, j)] {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// The multiple-cover kernel S = Σ_{d,k,ℓ>0} ℓ³ c(kℓ) q₁^{kd} q₂^{ℓd}
/// restricted to the (n, n) window. Needs c up to n², so the truncation of
/// `f` must exceed n².
pub fn multiple_cover_sum(f: &LaurentSeries, n: i64) -> BiGrid {
    assert!(f.truncation() > n * n, "f must be known past order n^2");
    let mut s = BiGrid::new(n, n);
    for d in 1..=n {
        for k in 1..=(n / d) {
            for l in 1..=(n / d) {
                s.add_assign(k * d, l * d, rat(l * l * l) * f.coeff(k * l));
            }
        }
    }
    s
}

/// One discrepant coefficient of the cleared identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Discrepancy {
    /// (q₁-exponent, q₂-exponent) of the first mismatched cell, row-major.
    pub exponents: (i64, i64),
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HarveyMooreReport {
    pub bidegree: (i64, i64),
    pub pass: bool,
    pub first_discrepancy: Option<Discrepancy>,
}

/// Compare both sides of the cleared identity built from the supplied
/// ingredients, exactly, on the full (n, n) window. The ingredients are
/// independent inputs so that single-coefficient mutations are observable.
///
/// `f` is the weight-10 Laurent series (minimum exponent −1), `j_cap` is
/// J = q·j, `e4` is the weight-4 Eisenstein series, and `s` the
/// multiple-cover grid.
pub fn harvey_moore_verify(
    f: &LaurentSeries,
    j_cap: &LaurentSeries,
    e4: &LaurentSeries,
    s: &BiGrid,
    n: i64,
) -> HarveyMooreReport {
    assert!(n >= 2);
    assert_eq!(s.bounds(), (n, n), "S window must match the bidegree");

    let q1f = BiGrid::from_series_q1(&f.shift(1), n, n);
    let e4_q2 = BiGrid::from_series_q2(e4, n, n);
    let mut q1_minus_q2 = BiGrid::new(n, n);
    q1_minus_q2.set(1, 0, rat(1));
    q1_minus_q2.set(0, 1, rat(-1));
    let mut q2 = BiGrid::new(n, n);
    q2.set(0, 1, rat(1));

    let lhs = q1f.mul(&e4_q2).mul(&q1_minus_q2).mul(&q2);

    // q₂J(q₁) − q₁J(q₂)
    assert!(j_cap.truncation() > n, "J must be known past order n");
    let mut j_diff = BiGrid::new(n, n);
    for m in 0..=n {
        j_diff.add_assign(m, 1, j_cap.coeff(m));
        j_diff.add_assign(1, m, -j_cap.coeff(m));
    }

    let mut bracket = q1_minus_q2.mul(&e4_q2.sub(s));
    bracket.add_assign(1, 0, rat(-1));
    let rhs = bracket.mul(&j_diff);

    match lhs.first_difference(&rhs) {
        None => HarveyMooreReport {
            bidegree: (n, n),
            pass: true,
            first_discrepancy: None,
        },
        Some((i, j)) => HarveyMooreReport {
            bidegree: (n, n),
            pass: false,
            first_discrepancy: Some(Discrepancy {
                exponents: (i, j),
                lhs: lhs.coeff(i, j),
                rhs: rhs.coeff(i, j),
            }),
        },
    }
}

/// Expand the canonical ingredients and verify the identity up to total
/// bidegree (n, n).
pub fn harvey_moore_check(n: i64) -> HarveyMooreReport {
    assert!(n >= 2);
    let f = f_series(n * n + 1);
    let j_cap = j_series(n + 1);
    let e4 = eisenstein(4, n + 1).expect("weight 4 is valid").series;
    let s = multiple_cover_sum(&f, n);
    harvey_moore_verify(&f, &j_cap, &e4, &s, n)
}
