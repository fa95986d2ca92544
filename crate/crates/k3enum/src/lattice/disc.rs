//! Discriminant groups Λ*/Λ of even nondegenerate lattices.
//!
//! The Smith normal form U·G·V = D of the Gram matrix G identifies Λ*/Λ with
//! ∏ ℤ/dᵢ: a functional with dual-basis coordinates c maps to U·c mod D, and
//! generators of the cyclic factors are the columns of U⁻¹. Cosets are
//! reported up to sign, reduced to the lexicographically minimal
//! representative of {x, −x}.

use super::matrix::{self, Mat};
use crate::rational::Rational;
use num::bigint::BigInt;
use num::traits::{One, Zero};
use num::Integer;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantGroup {
    /// Nontrivial elementary divisors, ascending, each dividing the next.
    orders: Vec<BigInt>,
    /// Dual-basis coordinates of a generator for each cyclic factor.
    generators: Vec<Vec<BigInt>>,
    total: BigInt,
    /// Left SNF transform of the Gram matrix, for coset reduction.
    u: Mat,
    /// Full SNF diagonal (including trivial factors).
    diag: Vec<BigInt>,
}

impl DiscriminantGroup {
    pub(crate) fn from_gram(gram: &Mat) -> Self {
        let n = gram.len();
        let snf = matrix::smith_normal_form(gram);
        let diag: Vec<BigInt> = (0..n).map(|i| snf.d[i][i].clone()).collect();
        debug_assert!(diag.iter().all(|d| !d.is_zero()));
        let uinv = matrix::inverse_unimodular(&snf.u);
        let mut orders = Vec::new();
        let mut generators = Vec::new();
        let mut total = BigInt::one();
        for (i, d) in diag.iter().enumerate() {
            total *= d;
            if *d > BigInt::one() {
                orders.push(d.clone());
                generators.push((0..n).map(|r| uinv[r][i].clone()).collect());
            }
        }
        DiscriminantGroup {
            orders,
            generators,
            total,
            u: snf.u,
            diag,
        }
    }

    /// |Λ*/Λ| = |det G|.
    pub fn order(&self) -> &BigInt {
        &self.total
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    /// One generator per nontrivial cyclic factor, in dual-basis coordinates.
    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    /// Class of a functional (dual coordinates c), as residues against the
    /// nontrivial cyclic orders.
    pub fn reduce(&self, c: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(c.len(), self.diag.len(), "coordinate length must match rank");
        let mut out = Vec::with_capacity(self.orders.len());
        for (i, d) in self.diag.iter().enumerate() {
            if *d <= BigInt::one() {
                continue;
            }
            let mut acc = BigInt::zero();
            for (j, cj) in c.iter().enumerate() {
                if !cj.is_zero() {
                    acc += &self.u[i][j] * cj;
                }
            }
            out.push(acc.mod_floor(d));
        }
        out
    }

    /// Class of a functional up to sign: the lexicographically smaller of the
    /// residue vectors of c and −c.
    pub fn canonical_coset(&self, c: &[BigInt]) -> Vec<BigInt> {
        let plus = self.reduce(c);
        let neg: Vec<BigInt> = c.iter().map(|x| -x.clone()).collect();
        let minus = self.reduce(&neg);
        plus.min(minus)
    }

    /// Dual coordinates of the group element with the given residue tuple.
    pub fn element(&self, residues: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(residues.len(), self.orders.len());
        let n = self.diag.len();
        let mut out = vec![BigInt::zero(); n];
        for (a, gen) in residues.iter().zip(&self.generators) {
            if a.is_zero() {
                continue;
            }
            for (o, g) in out.iter_mut().zip(gen) {
                *o += a * g;
            }
        }
        out
    }

    /// All residue tuples of the group, in lexicographic order.
    pub fn all_residues(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![Vec::new()];
        for d in &self.orders {
            let mut next = Vec::new();
            for prefix in &out {
                let mut a = BigInt::zero();
                while &a < d {
                    let mut t = prefix.clone();
                    t.push(a.clone());
                    next.push(t);
                    a += 1;
                }
            }
            out = next;
        }
        out
    }
}

/// c₁ᵀ·G⁻¹·c₂ for functionals in dual coordinates: the ℚ/ℤ-valued pairing on
/// Λ*/Λ lifted to ℚ.
pub(crate) fn dual_pairing(gram: &Mat, c1: &[BigInt], c2: &[BigInt]) -> Rational {
    let g: Vec<Vec<Rational>> = gram
        .iter()
        .map(|row| row.iter().map(|x| Rational::from(x.clone())).collect())
        .collect();
    let rhs: Vec<Rational> = c2.iter().map(|x| Rational::from(x.clone())).collect();
    let y = matrix::solve_square(&g, &rhs).expect("nondegenerate gram matrix");
    let mut acc = Rational::zero();
    for (a, b) in c1.iter().zip(&y) {
        if !a.is_zero() {
            acc = acc + Rational::from(a.clone()) * b;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{hyperbolic_plane, GramLattice};
    use crate::rational::{big, ratio};

    #[test]
    fn trivial_groups_for_unimodular_lattices() {
        let g = hyperbolic_plane().discriminant_group();
        assert!(g.is_trivial());
        assert_eq!(*g.order(), big(1));
        assert_eq!(g.canonical_coset(&[big(3), big(-5)]), Vec::<BigInt>::new());
    }

    #[test]
    fn cyclic_group_of_rank_one_lattice() {
        let l = GramLattice::new(&[vec![6]]).unwrap();
        let g = l.discriminant_group();
        assert_eq!(g.orders(), &[big(6)]);
        assert_eq!(*g.order(), big(6));
        // The functional v ↦ k lands in the class k mod 6, up to sign.
        assert_eq!(g.canonical_coset(&[big(1)]), vec![big(1)]);
        assert_eq!(g.canonical_coset(&[big(4)]), vec![big(2)]);
        assert_eq!(g.canonical_coset(&[big(6)]), vec![big(0)]);
        // Sign symmetry: d and −d reduce to the same coset.
        for k in -7..8i64 {
            assert_eq!(
                g.canonical_coset(&[big(k)]),
                g.canonical_coset(&[big(-k)])
            );
        }
    }

    #[test]
    fn group_order_matches_determinant() {
        let l = GramLattice::new(&[vec![2, 1], vec![1, -4]]).unwrap();
        let g = l.discriminant_group();
        assert_eq!(*g.order(), big(9));
        assert_eq!(g.orders(), &[big(9)]);
        assert_eq!(g.all_residues().len(), 9);
    }

    #[test]
    fn generators_have_the_advertised_order() {
        let l = GramLattice::new(&[vec![2, 0], vec![0, -4]]).unwrap();
        let g = l.discriminant_group();
        assert_eq!(g.orders(), &[big(2), big(4)]);
        for (ord, gen) in g.orders().iter().zip(g.generators()) {
            // ord·gen is integral against the lattice: it reduces to zero.
            let scaled: Vec<BigInt> = gen.iter().map(|x| ord * x).collect();
            assert!(g.reduce(&scaled).iter().all(|r| r.is_zero()));
            // No smaller positive multiple reduces to zero.
            let mut k = big(1);
            while &k < ord {
                let partial: Vec<BigInt> = gen.iter().map(|x| &k * x).collect();
                assert!(!g.reduce(&partial).iter().all(|r| r.is_zero()));
                k += 1;
            }
        }
    }

    #[test]
    fn dual_pairing_values() {
        let l = GramLattice::new(&[vec![2]]).unwrap();
        // The generator e* of Z/2 has q(e*) = 1/2 mod 2Z.
        let q = dual_pairing(l.gram(), &[big(1)], &[big(1)]);
        assert_eq!(q, ratio(1, 2));
    }
}
