//! Even integral lattices presented by Gram matrices.
//!
//! The toolkit covers the bilinear-form bookkeeping behind Noether-Lefschetz
//! numbers: discriminants, discriminant groups with their canonical coset
//! reduction, one-row border extensions, overlattice enumeration, and the
//! index data feeding Borcherds-style modularity statements.

mod disc;
mod matrix;
mod nl;

pub use disc::DiscriminantGroup;
pub use matrix::Mat;
pub use nl::{
    borcherds_index, divisibility, extend_gram, nl_lookup, nl_multiplicity, overlattice_datum,
    overlattices, pairing_solutions, refined_multiplicity, trivial_overlattice, BorcherdsIndex,
    NLDatum, OverlatticeDatum,
};

use crate::rational::Rational;
use num::bigint::BigInt;
use num::traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("diagonal entry {index} is odd; an even lattice is required")]
    OddDiagonal { index: usize },
    #[error("gram matrix is degenerate")]
    Degenerate,
    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("signature ({pos}, {neg}) is not hyperbolic")]
    NotHyperbolic { pos: usize, neg: usize },
    #[error("embedding does not preserve the pairing")]
    EmbeddingNotIsometric,
    #[error("embedding is not primitive")]
    EmbeddingNotPrimitive,
    #[error("discriminant group has order {order}; a trivial group is required")]
    NontrivialDiscriminantGroup { order: BigInt },
    #[error("discriminant exponent {exponent} is not an integer")]
    NonIntegralExponent { exponent: Rational },
    #[error("series truncated before order {needed} (available through {available})")]
    TruncationTooLow { needed: i64, available: i64 },
    #[error("discriminant {delta} is not positive")]
    NonPositiveDiscriminant { delta: BigInt },
    #[error("the zero vector has no divisibility")]
    ZeroVector,
    #[error("invalid lattice description: {0}")]
    InvalidJson(String),
}

/// An even nondegenerate lattice given by its Gram matrix in a fixed basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramLattice {
    gram: Mat,
    det: BigInt,
    signature: (usize, usize),
}

impl GramLattice {
    pub fn new(entries: &[Vec<i64>]) -> Result<Self, LatticeError> {
        let gram: Mat = entries
            .iter()
            .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_bigint(gram)
    }

    pub fn from_bigint(gram: Mat) -> Result<Self, LatticeError> {
        let n = gram.len();
        for row in &gram {
            if row.len() != n {
                return Err(LatticeError::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric);
                }
            }
            if (&gram[i][i] % 2u32) != BigInt::zero() {
                return Err(LatticeError::OddDiagonal { index: i });
            }
        }
        let det = matrix::det(&gram);
        if det.is_zero() {
            return Err(LatticeError::Degenerate);
        }
        let signature = matrix::signature(&gram);
        debug_assert_eq!(signature.0 + signature.1, n);
        Ok(GramLattice {
            gram,
            det,
            signature,
        })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    /// (positive, negative) inertia indices of the real quadratic form.
    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.signature == (1, self.rank().saturating_sub(1)) && self.rank() >= 1
    }

    /// Discriminant (−1)^(r−1)·det; positive exactly on hyperbolic lattices.
    pub fn discriminant(&self) -> BigInt {
        if self.rank() % 2 == 0 {
            -self.det.clone()
        } else {
            self.det.clone()
        }
    }

    pub fn direct_sum(&self, other: &GramLattice) -> GramLattice {
        let n = self.rank();
        let m = other.rank();
        let mut gram = vec![vec![BigInt::zero(); n + m]; n + m];
        for i in 0..n {
            gram[i][..n].clone_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            gram[n + i][n..].clone_from_slice(&other.gram[i]);
        }
        GramLattice {
            gram,
            det: &self.det * &other.det,
            signature: (
                self.signature.0 + other.signature.0,
                self.signature.1 + other.signature.1,
            ),
        }
    }

    pub fn discriminant_group(&self) -> DiscriminantGroup {
        DiscriminantGroup::from_gram(&self.gram)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .gram
            .iter()
            .map(|row| {
                serde_json::Value::Array(
                    row.iter()
                        .map(|x| {
                            let v: i64 = x.try_into().expect("gram entry fits in i64");
                            serde_json::Value::from(v)
                        })
                        .collect(),
                )
            })
            .collect();
        serde_json::json!({ "rank": self.rank(), "gram": rows })
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<Self, LatticeError> {
        let rank = value
            .get("rank")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| LatticeError::InvalidJson("missing integer field 'rank'".into()))?
            as usize;
        let rows = value
            .get("gram")
            .and_then(|v| v.as_array())
            .ok_or_else(|| LatticeError::InvalidJson("missing array field 'gram'".into()))?;
        if rows.len() != rank {
            return Err(LatticeError::InvalidJson(format!(
                "expected {} gram rows, found {}",
                rank,
                rows.len()
            )));
        }
        let mut gram: Mat = Vec::with_capacity(rank);
        for row in rows {
            let cells = row
                .as_array()
                .ok_or_else(|| LatticeError::InvalidJson("gram rows must be arrays".into()))?;
            let mut out = Vec::with_capacity(cells.len());
            for cell in cells {
                let x = cell
                    .as_i64()
                    .ok_or_else(|| LatticeError::InvalidJson("gram entries must be integers".into()))?;
                out.push(BigInt::from(x));
            }
            gram.push(out);
        }
        Self::from_bigint(gram)
    }
}

/// The hyperbolic plane U: rank 2, Gram [[0,1],[1,0]].
pub fn hyperbolic_plane() -> GramLattice {
    GramLattice::new(&[vec![0, 1], vec![1, 0]]).expect("U is a valid even lattice")
}

/// E8 with the sign of the form reversed, in the standard root basis.
pub fn e8_minus() -> GramLattice {
    GramLattice::new(&[
        vec![-2, 0, 1, 0, 0, 0, 0, 0],
        vec![0, -2, 0, 1, 0, 0, 0, 0],
        vec![1, 0, -2, 1, 0, 0, 0, 0],
        vec![0, 1, 1, -2, 1, 0, 0, 0],
        vec![0, 0, 0, 1, -2, 1, 0, 0],
        vec![0, 0, 0, 0, 1, -2, 1, 0],
        vec![0, 0, 0, 0, 0, 1, -2, 1],
        vec![0, 0, 0, 0, 0, 0, 1, -2],
    ])
    .expect("E8(-1) is a valid even lattice")
}

/// The K3 lattice U^3 + E8(−1)^2 of rank 22 and signature (3, 19).
pub fn k3_lattice() -> GramLattice {
    let u = hyperbolic_plane();
    let e8 = e8_minus();
    u.direct_sum(&u)
        .direct_sum(&u)
        .direct_sum(&e8)
        .direct_sum(&e8)
}
