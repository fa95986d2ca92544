//! Curve-counting generating functions on K3 surfaces: the Yau-Zaslow
//! series, the Katz-Klemm-Vafa genus expansion, Bryan-Leung point-insertion
//! series, Kawai-Yoshioka stable-pairs Euler characteristics, and the
//! Gromov-Witten/pairs correspondence check.
//!
//! All half-integer prefactors are handled algebraically through the
//! symmetric combinations w = y + 2 + y⁻¹ and w′ = z − 2 + z⁻¹, so every
//! computation stays inside Laurent polynomials over ℚ.

pub mod gv;

pub use gv::{gv_forward, gv_invert, sin_kernel, DivisibleBpsTable, GwPotentialTable};

use crate::modforms::{eisenstein, QVAR};
use crate::rational::{rat, to_integer, Rational};
use crate::series::{
    product_expand, symmetric_to_w, FactorFamily, LaurentSeries, ProductSpec, WBasis,
};
use num::bigint::BigInt;
use num::traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CurveCountError {
    #[error("table covers genus up to {have_g} and h up to {have_h}, need ({need_g},{need_h})")]
    InsufficientTable {
        have_g: i64,
        have_h: i64,
        need_g: i64,
        need_h: i64,
    },
    #[error("BPS entry at genus {g}, degree {k} is not an integer: {value}")]
    NonIntegralBps { g: i64, k: i64, value: String },
}

/// BPS counts r_{g,h}, genus 0..=g_max by 0..=h_max. Entries are exact
/// integers (checked at construction); r_{g,h} = 0 for g > h is structural.
#[derive(Debug, Clone, PartialEq)]
pub struct BpsTable {
    g_max: i64,
    h_max: i64,
    entries: Vec<Vec<Rational>>, // [g][h]
}

impl BpsTable {
    pub fn from_entries(g_max: i64, h_max: i64, entries: Vec<Vec<Rational>>) -> Self {
        assert_eq!(entries.len() as i64, g_max + 1);
        for (g, row) in entries.iter().enumerate() {
            assert_eq!(row.len() as i64, h_max + 1);
            for (h, v) in row.iter().enumerate() {
                assert!(
                    v.is_integer(),
                    "BPS count r_{{{g},{h}}} must be an integer, got {v}"
                );
            }
        }
        BpsTable {
            g_max,
            h_max,
            entries,
        }
    }

    pub fn g_max(&self) -> i64 {
        self.g_max
    }

    pub fn h_max(&self) -> i64 {
        self.h_max
    }

    /// r_{g,h}; zero above the diagonal is stored explicitly.
    pub fn r(&self, g: i64, h: i64) -> Rational {
        assert!((0..=self.g_max).contains(&g) && (0..=self.h_max).contains(&h));
        self.entries[g as usize][h as usize].clone()
    }

    /// Overwrite one entry; used by mutation tests.
    pub fn set(&mut self, g: i64, h: i64, value: Rational) {
        assert!((0..=self.g_max).contains(&g) && (0..=self.h_max).contains(&h));
        self.entries[g as usize][h as usize] = value;
    }

    /// Tab-separated rendering: header `g\h 0 1 2 …`, one row per genus,
    /// structural zeros (g > h) left empty.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("g\\h");
        for h in 0..=self.h_max {
            out.push('\t');
            out.push_str(&h.to_string());
        }
        out.push('\n');
        for g in 0..=self.g_max {
            out.push_str(&g.to_string());
            for h in 0..=self.h_max {
                out.push('\t');
                if g <= h {
                    out.push_str(&to_integer(&self.r(g, h)).to_string());
                }
            }
            out.push('\n');
        }
        out
    }
}

/// The genus-0 row: r_{0,h} is the coefficient of q^{h−1} in
/// q⁻¹∏_{n≥1}(1 − qⁿ)⁻²⁴.
pub fn yau_zaslow(h_max: i64) -> BpsTable {
    assert!(h_max >= 0);
    let spec = ProductSpec::new(QVAR, "y", vec![FactorFamily::new(0, 1, -24)]);
    let series = product_expand(&spec, h_max + 1).into_univariate();
    let row = (0..=h_max).map(|h| series.coeff(h)).collect();
    BpsTable::from_entries(0, h_max, vec![row])
}

/// The two-variable product ∏(1−qⁿ)⁻²⁰(1−s·zqⁿ)⁻²(1−s·z⁻¹qⁿ)⁻², s = ±1.
fn kkv_product(inner: &str, sign: i64, h_max: i64) -> crate::series::BiSeries {
    let spec = ProductSpec::new(
        QVAR,
        inner,
        vec![
            FactorFamily::new(0, 1, -20),
            FactorFamily::new(1, sign, -2),
            FactorFamily::new(-1, sign, -2),
        ],
    );
    product_expand(&spec, h_max + 1)
}

/// Full Katz-Klemm-Vafa table: the q^h slice of
/// ∏(1−qⁿ)⁻²⁰(1−zqⁿ)⁻²(1−z⁻¹qⁿ)⁻² is symmetric in z ↔ z⁻¹, hence a
/// polynomial in w′ = z − 2 + z⁻¹, and r_{g,h} = (−1)^g·[w′^g].
pub fn kkv_table(g_max: i64, h_max: i64) -> BpsTable {
    assert!(g_max >= 0 && h_max >= 0);
    let product = kkv_product("z", 1, h_max);
    let mut entries = vec![vec![Rational::zero(); (h_max + 1) as usize]; (g_max + 1) as usize];
    for h in 0..=h_max {
        let cs = symmetric_to_w(product.slice(h), WBasis::Minus);
        assert!(
            cs.len() as i64 <= h + 1,
            "slice q^{h} exceeds its provable w-degree"
        );
        for (g, c) in cs.iter().enumerate() {
            if (g as i64) <= g_max {
                let sign = if g % 2 == 0 { 1 } else { -1 };
                entries[g][h as usize] = rat(sign) * c;
            }
        }
    }
    BpsTable::from_entries(g_max, h_max, entries)
}

/// Bryan-Leung genus-g point-insertion series
/// η⁻²⁴·(−(1/24)·q d/dq E₂)^g, a Laurent series with minimum exponent −1.
pub fn bryan_leung(g: i64, q_trunc: i64) -> LaurentSeries {
    assert!(g >= 0 && q_trunc >= 1);
    let order = q_trunc + 2;
    let eta_inv = crate::modforms::delta_series(order).inv();
    let e2 = eisenstein(2, order).expect("weight 2 is valid").series;
    let insertion = e2.q_d_dq().scale(&crate::rational::ratio(-1, 24)).pow(g);
    eta_inv.mul(&insertion).truncate_to(q_trunc)
}

/// Euler characteristics e(P_n(S,h)) of stable-pairs moduli, n ≥ 1−h.
#[derive(Debug, Clone, PartialEq)]
pub struct PairsEulerTable {
    h_max: i64,
    n_max: i64,
    rows: Vec<Vec<BigInt>>, // row h holds n = 1−h ..= n_max
}

impl PairsEulerTable {
    pub fn h_max(&self) -> i64 {
        self.h_max
    }

    pub fn n_max(&self) -> i64 {
        self.n_max
    }

    /// e(P_n(S,h)); exactly zero below the n ≥ 1−h threshold.
    pub fn euler(&self, n: i64, h: i64) -> BigInt {
        assert!((0..=self.h_max).contains(&h) && n <= self.n_max);
        if n < 1 - h {
            return BigInt::zero();
        }
        self.rows[h as usize][(n - (1 - h)) as usize].clone()
    }
}

/// Expand the Kawai-Yoshioka generating product and read off
/// e(P_n(S,h)). The q^h slice of ∏(1−qⁿ)⁻²⁰(1−yqⁿ)⁻²(1−y⁻¹qⁿ)⁻² is an
/// exact Laurent polynomial; multiplying by y/(1−y)² = Σ_{m≥1} m·yᵐ gives
/// e(P_n(S,h)) = Σ_j slice_h[j]·(n−j) over j with n−j ≥ 1. The slices are
/// exact, so every requested n is within provable support.
pub fn kawai_yoshioka(h_max: i64, n_max: i64) -> PairsEulerTable {
    assert!(h_max >= 0 && n_max >= 1 - h_max);
    let product = kkv_product("y", 1, h_max);
    let mut rows = Vec::with_capacity((h_max + 1) as usize);
    for h in 0..=h_max {
        let slice = product.slice(h);
        let mut row = Vec::new();
        for n in (1 - h)..=n_max {
            let mut acc = Rational::zero();
            if let Some((lo, hi)) = slice.support() {
                for j in lo..=hi.min(n - 1) {
                    acc += slice.coeff(j) * rat(n - j);
                }
            }
            row.push(to_integer(&acc));
        }
        rows.push(row);
    }
    PairsEulerTable { h_max, n_max, rows }
}

/// w·Z_{P,h}(y) as a polynomial in w = y + 2 + y⁻¹: the q^h slice of
/// ∏(1−qⁿ)⁻²⁰(1+yqⁿ)⁻²(1+y⁻¹qⁿ)⁻², which is y ↔ y⁻¹ symmetric. The
/// stable-pairs prefactor −(√(−y) − 1/√(−y))⁻² equals 1/w exactly, so the
/// returned coefficients are those of w⁰..w^h.
pub fn pairs_partition_w(h: i64, q_trunc: i64) -> Vec<Rational> {
    assert!((0..q_trunc).contains(&h), "slice q^{h} needs q_trunc > h");
    let product = kkv_product("y", -1, q_trunc - 1);
    symmetric_to_w(product.slice(h), WBasis::Plus)
}

/// w·Z_{GW,h} as a polynomial in w: the column [r_{0,h}, …, r_{h,h}]. Under
/// −e^{iu} = y the genus-g insertion (2 sin(u/2))^{2g−2} becomes w^{g−1}.
pub fn gw_partition_w(h: i64, table: &BpsTable) -> Result<Vec<Rational>, CurveCountError> {
    if table.g_max() < h || table.h_max() < h {
        return Err(CurveCountError::InsufficientTable {
            have_g: table.g_max(),
            have_h: table.h_max(),
            need_g: h,
            need_h: h,
        });
    }
    Ok((0..=h).map(|g| table.r(g, h)).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct GwPairsMismatch {
    pub h: i64,
    pub gw: Vec<Rational>,
    pub pairs: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GwPairsReport {
    pub h_max: i64,
    pub pass: bool,
    pub first_mismatch: Option<GwPairsMismatch>,
}

/// Compare the Gromov-Witten and stable-pairs partition polynomials in w
/// for every h ≤ h_max, using the supplied BPS table for the GW side.
pub fn gw_pairs_check_with(table: &BpsTable, h_max: i64) -> GwPairsReport {
    for h in 0..=h_max {
        let gw = match gw_partition_w(h, table) {
            Ok(p) => p,
            Err(_) => panic!("table must cover genus and h up to {h_max}"),
        };
        let mut pairs = pairs_partition_w(h, h_max + 1);
        // Trailing zero padding is representational, not mathematical.
        while pairs.len() < gw.len() {
            pairs.push(Rational::zero());
        }
        if gw != pairs {
            return GwPairsReport {
                h_max,
                pass: false,
                first_mismatch: Some(GwPairsMismatch { h, gw, pairs }),
            };
        }
    }
    GwPairsReport {
        h_max,
        pass: true,
        first_mismatch: None,
    }
}

/// The correspondence check with the canonical KKV table.
pub fn gw_pairs_check(h_max: i64) -> GwPairsReport {
    gw_pairs_check_with(&kkv_table(h_max, h_max), h_max)
}
