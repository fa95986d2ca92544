//! Noether-Lefschetz bookkeeping: bordered Gram extensions, overlattice
//! classification, exact multiplicity counts, and Borcherds-style indexing
//! into modular-form coefficients.

use super::disc::dual_pairing;
use super::matrix::{self, Mat};
use super::{GramLattice, LatticeError};
use crate::rational::{isqrt, Rational};
use crate::series::LaurentSeries;
use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use num::Integer;
use std::collections::{BTreeSet, VecDeque};

/// A rank-r lattice Λ extended by one border row: the Gram matrix of
/// (Λ, v) with ⟨v,v⟩ = 2h−2 and ⟨v, vᵢ⟩ = dᵢ, together with its
/// discriminant Δ(h,d) and coset invariant δ(h,d) in G(Λ)/±.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NLDatum {
    base: GramLattice,
    h: i64,
    d: Vec<BigInt>,
    bordered: Mat,
    delta: BigInt,
    coset: Vec<BigInt>,
}

impl NLDatum {
    pub fn base(&self) -> &GramLattice {
        &self.base
    }

    pub fn h(&self) -> i64 {
        self.h
    }

    pub fn d(&self) -> &[BigInt] {
        &self.d
    }

    /// The bordered Gram matrix; may be degenerate when Δ(h,d) = 0.
    pub fn bordered(&self) -> &Mat {
        &self.bordered
    }

    pub fn delta(&self) -> &BigInt {
        &self.delta
    }

    pub fn coset(&self) -> &[BigInt] {
        &self.coset
    }
}

/// Border the Gram matrix of Λ with pairings d and corner 2h−2, and compute
/// the (Δ, δ) invariants of the extension.
pub fn extend_gram(base: &GramLattice, h: i64, d: &[i64]) -> Result<NLDatum, LatticeError> {
    let r = base.rank();
    if d.len() != r {
        return Err(LatticeError::DimensionMismatch {
            expected: r,
            found: d.len(),
        });
    }
    let db: Vec<BigInt> = d.iter().map(|&x| BigInt::from(x)).collect();
    let mut bordered = vec![vec![BigInt::zero(); r + 1]; r + 1];
    for i in 0..r {
        bordered[i][..r].clone_from_slice(&base.gram()[i]);
        bordered[i][r] = db[i].clone();
        bordered[r][i] = db[i].clone();
    }
    bordered[r][r] = BigInt::from(2 * h - 2);
    let det = matrix::det(&bordered);
    // Discriminant sign convention for the rank r+1 extension.
    let delta = if r % 2 == 0 { det } else { -det };
    let coset = base.discriminant_group().canonical_coset(&db);
    Ok(NLDatum {
        base: base.clone(),
        h,
        d: db,
        bordered,
        delta,
        coset,
    })
}

/// An even lattice 𝕃 of rank r+1 with a primitive isometric embedding
/// ι: Λ → 𝕃, classified up to isomorphism by (Δ, δ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlatticeDatum {
    base: GramLattice,
    lattice: GramLattice,
    /// (r+1)×r matrix; column i holds the 𝕃-coordinates of ι(vᵢ).
    embedding: Mat,
    delta: BigInt,
    coset: Vec<BigInt>,
}

impl OverlatticeDatum {
    pub fn base(&self) -> &GramLattice {
        &self.base
    }

    pub fn lattice(&self) -> &GramLattice {
        &self.lattice
    }

    pub fn embedding(&self) -> &Mat {
        &self.embedding
    }

    pub fn delta(&self) -> &BigInt {
        &self.delta
    }

    pub fn coset(&self) -> &[BigInt] {
        &self.coset
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .embedding
            .iter()
            .map(|row| {
                serde_json::Value::Array(
                    row.iter()
                        .map(|x| {
                            let v: i64 = x.try_into().expect("embedding entry fits in i64");
                            serde_json::Value::from(v)
                        })
                        .collect(),
                )
            })
            .collect();
        serde_json::json!({
            "base": self.base.to_json_value(),
            "lattice": self.lattice.to_json_value(),
            "embedding": rows,
        })
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<Self, LatticeError> {
        let base = value
            .get("base")
            .ok_or_else(|| LatticeError::InvalidJson("missing field 'base'".into()))
            .and_then(GramLattice::from_json_value)?;
        let lattice = value
            .get("lattice")
            .ok_or_else(|| LatticeError::InvalidJson("missing field 'lattice'".into()))
            .and_then(GramLattice::from_json_value)?;
        let rows = value
            .get("embedding")
            .and_then(|v| v.as_array())
            .ok_or_else(|| LatticeError::InvalidJson("missing array field 'embedding'".into()))?;
        let mut embedding: Mat = Vec::with_capacity(rows.len());
        for row in rows {
            let cells = row
                .as_array()
                .ok_or_else(|| LatticeError::InvalidJson("embedding rows must be arrays".into()))?;
            let mut out = Vec::with_capacity(cells.len());
            for cell in cells {
                let x = cell.as_i64().ok_or_else(|| {
                    LatticeError::InvalidJson("embedding entries must be integers".into())
                })?;
                out.push(BigInt::from(x));
            }
            embedding.push(out);
        }
        overlattice_datum(&base, lattice, embedding)
    }
}

/// Validate an embedding ι: Λ → 𝕃 (isometric, primitive, corank 1) and
/// compute the (Δ, δ) invariants. The coset is read off a splitting
/// 𝕃 = ι(Λ) ⊕ ℤv through the functional ⟨v, ι(·)⟩; the class in G(Λ)/± is
/// independent of the splitting vector chosen.
pub fn overlattice_datum(
    base: &GramLattice,
    lattice: GramLattice,
    embedding: Mat,
) -> Result<OverlatticeDatum, LatticeError> {
    let r = base.rank();
    if lattice.rank() != r + 1 {
        return Err(LatticeError::DimensionMismatch {
            expected: r + 1,
            found: lattice.rank(),
        });
    }
    if embedding.len() != r + 1 || embedding.iter().any(|row| row.len() != r) {
        return Err(LatticeError::DimensionMismatch {
            expected: r + 1,
            found: embedding.len(),
        });
    }
    let et = matrix::transpose(&embedding);
    let pulled = matrix::matmul(&matrix::matmul(&et, lattice.gram()), &embedding);
    if &pulled != base.gram() {
        return Err(LatticeError::EmbeddingNotIsometric);
    }
    let snf = matrix::smith_normal_form(&embedding);
    for i in 0..r {
        if snf.d[i][i] != BigInt::one() {
            return Err(LatticeError::EmbeddingNotPrimitive);
        }
    }
    let uinv = matrix::inverse_unimodular(&snf.u);
    let v = matrix::column(&uinv, r);
    let mut delta_raw = Vec::with_capacity(r);
    for i in 0..r {
        delta_raw.push(matrix::pair(lattice.gram(), &v, &matrix::column(&embedding, i)));
    }
    let coset = base.discriminant_group().canonical_coset(&delta_raw);
    let delta = lattice.discriminant();
    Ok(OverlatticeDatum {
        base: base.clone(),
        lattice,
        embedding,
        delta,
        coset,
    })
}

/// The bordered lattice itself as an overlattice datum; fails with a
/// degeneracy error when Δ(h,d) = 0.
pub fn trivial_overlattice(datum: &NLDatum) -> Result<OverlatticeDatum, LatticeError> {
    let lattice = GramLattice::from_bigint(datum.bordered.clone())?;
    let r = datum.base.rank();
    let mut embedding = vec![vec![BigInt::zero(); r]; r + 1];
    for (i, row) in embedding.iter_mut().enumerate().take(r) {
        row[i] = BigInt::one();
    }
    overlattice_datum(&datum.base, lattice, embedding)
}

/// All β ∈ 𝕃 with ⟨β, ι(vᵢ)⟩ = dᵢ and ⟨β, β⟩ = 2h−2, in 𝕃-coordinates.
///
/// The pairing constraints pin β to a coset β₀ + ℤe of the rank-1 orthogonal
/// complement of ι(Λ); the norm condition is a quadratic in the coset
/// parameter with negative leading coefficient ⟨e,e⟩, so the integer roots
/// enumerate the solutions exactly.
pub fn pairing_solutions(
    datum: &OverlatticeDatum,
    h: i64,
    d: &[i64],
) -> Result<Vec<Vec<BigInt>>, LatticeError> {
    let r = datum.base.rank();
    if d.len() != r {
        return Err(LatticeError::DimensionMismatch {
            expected: r,
            found: d.len(),
        });
    }
    if !datum.base.is_hyperbolic() {
        let (pos, neg) = datum.base.signature();
        return Err(LatticeError::NotHyperbolic { pos, neg });
    }
    if datum.lattice.signature() != (1, r) {
        let (pos, neg) = datum.lattice.signature();
        return Err(LatticeError::NotHyperbolic { pos, neg });
    }
    let g = datum.lattice.gram();
    // Row i of A is the functional ⟨·, ι(vᵢ)⟩.
    let a = matrix::matmul(&matrix::transpose(&datum.embedding), g);
    let snf = matrix::smith_normal_form(&a);
    let db: Vec<BigInt> = d.iter().map(|&x| BigInt::from(x)).collect();
    let rhs = matrix::matvec(&snf.u, &db);
    let mut y = vec![BigInt::zero(); r + 1];
    for i in 0..r {
        debug_assert!(!snf.d[i][i].is_zero(), "pairing matrix has full rank");
        if !(&rhs[i] % &snf.d[i][i]).is_zero() {
            return Ok(Vec::new());
        }
        y[i] = &rhs[i] / &snf.d[i][i];
    }
    let beta0 = matrix::matvec(&snf.v, &y);
    let e = matrix::column(&snf.v, r);
    let qa = matrix::pair(g, &e, &e);
    assert!(
        qa.is_negative(),
        "orthogonal complement of a hyperbolic sublattice is negative definite"
    );
    let qb = BigInt::from(2) * matrix::pair(g, &beta0, &e);
    let target = BigInt::from(2 * h - 2);
    let qc = matrix::pair(g, &beta0, &beta0) - &target;
    let disc = &qb * &qb - BigInt::from(4) * &qa * &qc;
    if disc.is_negative() {
        return Ok(Vec::new());
    }
    let root = isqrt(&disc);
    if &root * &root != disc {
        return Ok(Vec::new());
    }
    let den = BigInt::from(2) * &qa;
    let mut ts = BTreeSet::new();
    for sgn in [1i32, -1] {
        let num = -&qb + BigInt::from(sgn) * &root;
        if (&num % &den).is_zero() {
            ts.insert(num / &den);
        }
    }
    let mut out = Vec::new();
    for t in ts {
        let beta: Vec<BigInt> = beta0
            .iter()
            .zip(&e)
            .map(|(b0, ei)| b0 + &t * ei)
            .collect();
        debug_assert_eq!(matrix::pair(g, &beta, &beta), target);
        debug_assert_eq!(matrix::matvec(&a, &beta), db);
        out.push(beta);
    }
    Ok(out)
}

pub fn nl_multiplicity(datum: &OverlatticeDatum, h: i64, d: &[i64]) -> Result<u64, LatticeError> {
    Ok(pairing_solutions(datum, h, d)?.len() as u64)
}

/// Divisibility of a nonzero lattice vector: the gcd of its coordinates in
/// an integral basis.
pub fn divisibility(beta: &[BigInt]) -> Result<BigInt, LatticeError> {
    let mut g = BigInt::zero();
    for x in beta {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    Ok(g)
}

/// Count of pairing solutions with divisibility exactly m. The zero vector
/// (possible only when d = 0) carries the label m = 0.
pub fn refined_multiplicity(
    datum: &OverlatticeDatum,
    m: i64,
    h: i64,
    d: &[i64],
) -> Result<u64, LatticeError> {
    let target = BigInt::from(m);
    let mut count = 0u64;
    for beta in pairing_solutions(datum, h, d)? {
        let label = beta.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if label == target {
            count += 1;
        }
    }
    Ok(count)
}

fn rationalize(m: &Mat) -> Vec<Vec<Rational>> {
    m.iter()
        .map(|row| row.iter().map(|x| Rational::from(x.clone())).collect())
        .collect()
}

/// Subgroup generated by `gens` inside ∏ ℤ/orders, as reduced residue tuples.
fn span(orders: &[BigInt], gens: &[Vec<BigInt>]) -> BTreeSet<Vec<BigInt>> {
    let zero = vec![BigInt::zero(); orders.len()];
    let mut set = BTreeSet::new();
    set.insert(zero);
    loop {
        let mut added = false;
        let snapshot: Vec<Vec<BigInt>> = set.iter().cloned().collect();
        for a in &snapshot {
            for g in gens {
                let sum: Vec<BigInt> = a
                    .iter()
                    .zip(g)
                    .zip(orders)
                    .map(|((x, y), o)| (x + y).mod_floor(o))
                    .collect();
                if set.insert(sum) {
                    added = true;
                }
            }
        }
        if !added {
            return set;
        }
    }
}

/// Classify the finite-index even overlattices of the bordered lattice that
/// contain ι(Λ) primitively, one representative per (Δ, δ) class, realized by
/// the isotropic subgroups of the bordered discriminant group. Requires
/// Δ(h,d) > 0. Results are sorted by descending Δ (the bordered lattice
/// itself comes first), then by coset.
pub fn overlattices(datum: &NLDatum) -> Result<Vec<OverlatticeDatum>, LatticeError> {
    if !datum.delta.is_positive() {
        return Err(LatticeError::NonPositiveDiscriminant {
            delta: datum.delta.clone(),
        });
    }
    let l0 = GramLattice::from_bigint(datum.bordered.clone())?;
    if !l0.is_hyperbolic() {
        let (pos, neg) = l0.signature();
        return Err(LatticeError::NotHyperbolic { pos, neg });
    }
    let group = l0.discriminant_group();
    let orders = group.orders().to_vec();
    // Residue tuples of the elements with q(x) ≡ 0 mod 2ℤ.
    let mut isotropic = BTreeSet::new();
    for residues in group.all_residues() {
        let coords = group.element(&residues);
        let q = dual_pairing(l0.gram(), &coords, &coords);
        if (q / Rational::from(BigInt::from(2))).is_integer() {
            isotropic.insert(residues);
        }
    }
    // Breadth-first closure over isotropic subgroups: every subgroup of an
    // isotropic subgroup is isotropic, so single-element extensions reach all.
    let trivial = span(&orders, &[]);
    let mut seen = BTreeSet::new();
    seen.insert(trivial.clone());
    let mut queue = VecDeque::new();
    queue.push_back(trivial);
    let mut subgroups = Vec::new();
    while let Some(sub) = queue.pop_front() {
        subgroups.push(sub.clone());
        for x in &isotropic {
            if sub.contains(x) {
                continue;
            }
            let mut gens: Vec<Vec<BigInt>> = sub.iter().cloned().collect();
            gens.push(x.clone());
            let bigger = span(&orders, &gens);
            if bigger.iter().all(|e| isotropic.contains(e)) && seen.insert(bigger.clone()) {
                queue.push_back(bigger);
            }
        }
    }

    let r1 = l0.rank();
    let scale = l0.det().abs();
    let grat = rationalize(l0.gram());
    let mut results: Vec<OverlatticeDatum> = Vec::new();
    let mut invariants = BTreeSet::new();
    for sub in subgroups {
        // Generators of the overlattice: the bordered basis plus the lifts
        // G₀⁻¹·c of the subgroup elements, all scaled into ℤ-rows.
        let mut rows = matrix::identity(r1);
        for row in rows.iter_mut() {
            for x in row.iter_mut() {
                *x *= &scale;
            }
        }
        for residues in &sub {
            if residues.iter().all(|x| x.is_zero()) {
                continue;
            }
            let coords = group.element(residues);
            let crat: Vec<Rational> = coords.iter().map(|x| Rational::from(x.clone())).collect();
            let lift = matrix::solve_square(&grat, &crat).expect("nondegenerate bordered gram");
            let row: Vec<BigInt> = lift
                .iter()
                .map(|v| {
                    let w = v * Rational::from(scale.clone());
                    assert!(w.is_integer(), "scaled dual vector is integral");
                    w.to_integer()
                })
                .collect();
            rows.push(row);
        }
        let basis = matrix::hermite_rows(rows);
        assert_eq!(basis.len(), r1, "overlattice has full rank");
        let mut gh = matrix::matmul(&matrix::matmul(&basis, l0.gram()), &matrix::transpose(&basis));
        let s2 = &scale * &scale;
        for row in gh.iter_mut() {
            for x in row.iter_mut() {
                debug_assert!((&*x % &s2).is_zero(), "overlattice pairing is integral");
                *x = &*x / &s2;
            }
        }
        let lattice_h = GramLattice::from_bigint(gh)?;
        let order = BigInt::from(sub.len());
        debug_assert_eq!(
            lattice_h.discriminant() * &order * &order,
            datum.delta,
            "index-|H| overlattice divides the discriminant by |H|^2"
        );
        let btrat = rationalize(&matrix::transpose(&basis));
        let mut embedding = vec![vec![BigInt::zero(); r1 - 1]; r1];
        for i in 0..r1 - 1 {
            let mut rhs = vec![Rational::zero(); r1];
            rhs[i] = Rational::from(scale.clone());
            let xi = matrix::solve_square(&btrat, &rhs).expect("basis is invertible");
            for (k, v) in xi.iter().enumerate() {
                assert!(v.is_integer(), "bordered basis lies in the overlattice");
                embedding[k][i] = v.to_integer();
            }
        }
        match overlattice_datum(&datum.base, lattice_h, embedding) {
            Ok(over) => {
                if invariants.insert((over.delta.clone(), over.coset.clone())) {
                    results.push(over);
                }
            }
            // Subgroups meeting the image of Λ* destroy primitivity; skip.
            Err(LatticeError::EmbeddingNotPrimitive) => continue,
            Err(e) => return Err(e),
        }
    }
    results.sort_by(|x, y| y.delta.cmp(&x.delta).then(x.coset.cmp(&y.coset)));
    Ok(results)
}

/// Index data for the modularity statement: the coset label, the coefficient
/// exponent Δ(h,d)/2l with l = Δ(Λ), and the expected weight (22−r)/2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorcherdsIndex {
    pub coset: Vec<BigInt>,
    pub exponent: Rational,
    pub weight: Rational,
    /// Δ(h,d) = 0: the class reads the constant term (Hodge-bundle case).
    pub hodge_degenerate: bool,
}

pub fn borcherds_index(
    base: &GramLattice,
    h: i64,
    d: &[i64],
) -> Result<BorcherdsIndex, LatticeError> {
    let datum = extend_gram(base, h, d)?;
    let l = base.discriminant();
    let exponent = Rational::new(datum.delta.clone(), BigInt::from(2) * l);
    let weight = Rational::new(BigInt::from(22 - base.rank() as i64), BigInt::from(2));
    Ok(BorcherdsIndex {
        coset: datum.coset,
        exponent,
        weight,
        hodge_degenerate: datum.delta.is_zero(),
    })
}

/// Read the multiplicity prediction off a scalar modular form: the
/// coefficient of Φ at exponent Δ(h,d)/2l. Negative Δ(h,d) vanishes by
/// convention. Only lattices with trivial discriminant group are supported;
/// for those the exponent is automatically integral, so the integrality
/// check only guards hand-built inconsistent input.
pub fn nl_lookup(
    phi: &LaurentSeries,
    base: &GramLattice,
    h: i64,
    d: &[i64],
) -> Result<Rational, LatticeError> {
    let group = base.discriminant_group();
    if !group.is_trivial() {
        return Err(LatticeError::NontrivialDiscriminantGroup {
            order: group.order().clone(),
        });
    }
    let datum = extend_gram(base, h, d)?;
    if datum.delta.is_negative() {
        return Ok(Rational::zero());
    }
    let l = base.discriminant();
    let exponent = Rational::new(datum.delta.clone(), BigInt::from(2) * l);
    if !exponent.is_integer() {
        return Err(LatticeError::NonIntegralExponent { exponent });
    }
    let needed: i64 = i64::try_from(&exponent.to_integer()).unwrap_or(i64::MAX);
    if needed >= phi.truncation() {
        return Err(LatticeError::TruncationTooLow {
            needed,
            available: phi.truncation() - 1,
        });
    }
    Ok(phi.coeff(needed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::hyperbolic_plane;
    use crate::modforms::eisenstein;
    use crate::rational::{big, rat};

    fn rank2_split() -> OverlatticeDatum {
        // 𝕃 = ⟨2⟩ ⊕ ⟨−2⟩ with ι the first factor.
        let base = GramLattice::new(&[vec![2]]).unwrap();
        let lattice = GramLattice::new(&[vec![2, 0], vec![0, -2]]).unwrap();
        let embedding = vec![vec![BigInt::from(1)], vec![BigInt::from(0)]];
        overlattice_datum(&base, lattice, embedding).unwrap()
    }

    #[test]
    fn bordered_discriminants() {
        let u = hyperbolic_plane();
        let n = extend_gram(&u, 0, &[0, 0]).unwrap();
        assert_eq!(*n.delta(), big(2));
        assert_eq!(n.bordered()[2][2], big(-2));
        assert!(n.coset().is_empty());

        let n = extend_gram(&u, 2, &[1, 1]).unwrap();
        assert_eq!(*n.delta(), big(0));

        let two = GramLattice::new(&[vec![2]]).unwrap();
        let n = extend_gram(&two, 1, &[0]).unwrap();
        assert_eq!(*n.delta(), big(0));
    }

    #[test]
    fn closed_form_over_u() {
        let u = hyperbolic_plane();
        for h in -10..=10i64 {
            for d1 in -10..=10i64 {
                for d2 in -10..=10i64 {
                    let n = extend_gram(&u, h, &[d1, d2]).unwrap();
                    assert_eq!(*n.delta(), big(2 * (d1 * d2 - h + 1)));
                }
            }
        }
    }

    #[test]
    fn coset_is_sign_invariant() {
        let two = GramLattice::new(&[vec![6]]).unwrap();
        for h in -3..4i64 {
            for d in -9..10i64 {
                let plus = extend_gram(&two, h, &[d]).unwrap();
                let minus = extend_gram(&two, h, &[-d]).unwrap();
                assert_eq!(plus.coset(), minus.coset());
                assert_eq!(plus.delta(), minus.delta());
            }
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let u = hyperbolic_plane();
        assert_eq!(
            extend_gram(&u, 0, &[1]).unwrap_err(),
            LatticeError::DimensionMismatch {
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn trivial_overlattice_preserves_invariants() {
        let two = GramLattice::new(&[vec![2]]).unwrap();
        let n = extend_gram(&two, 0, &[1]).unwrap();
        assert_eq!(*n.delta(), big(5));
        assert_eq!(n.coset(), &[big(1)]);
        let over = trivial_overlattice(&n).unwrap();
        assert_eq!(over.delta(), n.delta());
        assert_eq!(over.coset(), n.coset());

        let degenerate = extend_gram(&two, 1, &[0]).unwrap();
        assert_eq!(
            trivial_overlattice(&degenerate).unwrap_err(),
            LatticeError::Degenerate
        );
    }

    #[test]
    fn multiplicities_on_the_split_lattice() {
        let over = rank2_split();
        // β = v₁ + t·e with ⟨β,β⟩ = 2 − 2t².
        assert_eq!(nl_multiplicity(&over, 2, &[2]).unwrap(), 1);
        assert_eq!(nl_multiplicity(&over, 1, &[2]).unwrap(), 2);
        assert_eq!(nl_multiplicity(&over, 0, &[2]).unwrap(), 0);
        // Odd pairing with the generator of ⟨2⟩ is unsolvable.
        assert_eq!(nl_multiplicity(&over, 1, &[1]).unwrap(), 0);
        assert_eq!(nl_multiplicity(&over, 7, &[1]).unwrap(), 0);
    }

    #[test]
    fn multiplicities_on_a_bordered_u() {
        let u = hyperbolic_plane();
        let n = extend_gram(&u, 0, &[0, 0]).unwrap();
        let over = trivial_overlattice(&n).unwrap();
        // Solutions are t·v₃ with ⟨β,β⟩ = −2t².
        assert_eq!(nl_multiplicity(&over, 1, &[0, 0]).unwrap(), 1);
        assert_eq!(nl_multiplicity(&over, 0, &[0, 0]).unwrap(), 2);
        assert_eq!(nl_multiplicity(&over, -3, &[0, 0]).unwrap(), 2);
        assert_eq!(nl_multiplicity(&over, 2, &[0, 0]).unwrap(), 0);
        assert_eq!(nl_multiplicity(&over, -2, &[0, 0]).unwrap(), 0);
    }

    #[test]
    fn multiplicity_sign_symmetry() {
        let over = rank2_split();
        for h in -4..4i64 {
            for d in -4..5i64 {
                assert_eq!(
                    nl_multiplicity(&over, h, &[d]).unwrap(),
                    nl_multiplicity(&over, h, &[-d]).unwrap()
                );
            }
        }
    }

    #[test]
    fn divisibility_of_vectors() {
        assert_eq!(divisibility(&[big(1), big(0)]).unwrap(), big(1));
        assert_eq!(divisibility(&[big(2), big(2)]).unwrap(), big(2));
        assert_eq!(divisibility(&[big(2), big(3)]).unwrap(), big(1));
        assert_eq!(
            divisibility(&[big(0), big(0)]).unwrap_err(),
            LatticeError::ZeroVector
        );
    }

    #[test]
    fn refined_counts_partition_the_multiplicity() {
        let over = rank2_split();
        // h=1, d=(2): solutions v₁ ± e, both primitive.
        assert_eq!(refined_multiplicity(&over, 1, 1, &[2]).unwrap(), 2);
        assert_eq!(refined_multiplicity(&over, 2, 1, &[2]).unwrap(), 0);
        // h=5, d=(4): the single solution is 2v₁, divisibility 2.
        assert_eq!(nl_multiplicity(&over, 5, &[4]).unwrap(), 1);
        assert_eq!(refined_multiplicity(&over, 1, 5, &[4]).unwrap(), 0);
        assert_eq!(refined_multiplicity(&over, 2, 5, &[4]).unwrap(), 1);
        // h=4, d=(4): 2v₁ ± e, both primitive.
        assert_eq!(refined_multiplicity(&over, 1, 4, &[4]).unwrap(), 2);
        // Partition property over a small sweep.
        for h in -3..4i64 {
            for d in -4..5i64 {
                let total = nl_multiplicity(&over, h, &[d]).unwrap();
                let mut sum = 0;
                for m in 0..12i64 {
                    sum += refined_multiplicity(&over, m, h, &[d]).unwrap();
                }
                assert_eq!(sum, total);
            }
        }
    }

    #[test]
    fn zero_class_carries_label_zero() {
        let over = rank2_split();
        // h=1, d=(0): β = 0 and no others (−2t² = 0).
        assert_eq!(nl_multiplicity(&over, 1, &[0]).unwrap(), 1);
        assert_eq!(refined_multiplicity(&over, 0, 1, &[0]).unwrap(), 1);
        assert_eq!(refined_multiplicity(&over, 1, 1, &[0]).unwrap(), 0);
    }

    #[test]
    fn overlattice_enumeration_squarefree() {
        let u = hyperbolic_plane();
        let n = extend_gram(&u, 0, &[0, 0]).unwrap();
        let found = overlattices(&n).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(*found[0].delta(), big(2));
    }

    #[test]
    fn overlattice_enumeration_with_index_three() {
        // Bordered ⟨2⟩ with h=−1, d=(1): Gram [[2,1],[1,−4]], Δ = 9,
        // discriminant group ℤ/9 with an isotropic ℤ/3.
        let two = GramLattice::new(&[vec![2]]).unwrap();
        let n = extend_gram(&two, -1, &[1]).unwrap();
        assert_eq!(*n.delta(), big(9));
        let found = overlattices(&n).unwrap();
        assert_eq!(found.len(), 2);
        assert_eq!(*found[0].delta(), big(9));
        assert_eq!(*found[1].delta(), big(1));
        for over in &found {
            // Δ of each overlattice divides Δ(h,d).
            assert!((n.delta() % over.delta()).is_zero());
            // ι stays isometric: pulled-back Gram is ⟨2⟩.
            let et = matrix::transpose(over.embedding());
            let pulled = matrix::matmul(
                &matrix::matmul(&et, over.lattice().gram()),
                over.embedding(),
            );
            assert_eq!(&pulled, two.gram());
        }
        // The index-3 overlattice is unimodular of signature (1,1).
        assert_eq!(found[1].lattice().det().abs(), big(1));
        assert_eq!(found[1].lattice().signature(), (1, 1));
    }

    #[test]
    fn overlattices_require_positive_discriminant() {
        let u = hyperbolic_plane();
        let n = extend_gram(&u, 2, &[1, 1]).unwrap();
        assert_eq!(
            overlattices(&n).unwrap_err(),
            LatticeError::NonPositiveDiscriminant { delta: big(0) }
        );
        let n = extend_gram(&u, 3, &[0, 0]).unwrap();
        assert!(matches!(
            overlattices(&n).unwrap_err(),
            LatticeError::NonPositiveDiscriminant { .. }
        ));
    }

    #[test]
    fn non_primitive_embeddings_are_rejected() {
        // ι(v) = 2e + 2f in U has ⟨ι(v),ι(v)⟩ = 8 but is divisible by 2.
        let base = GramLattice::new(&[vec![8]]).unwrap();
        let u = hyperbolic_plane();
        let embedding = vec![vec![BigInt::from(2)], vec![BigInt::from(2)]];
        assert_eq!(
            overlattice_datum(&base, u, embedding).unwrap_err(),
            LatticeError::EmbeddingNotPrimitive
        );
    }

    #[test]
    fn non_isometric_embeddings_are_rejected() {
        let base = GramLattice::new(&[vec![2]]).unwrap();
        let u = hyperbolic_plane();
        let embedding = vec![vec![BigInt::from(1)], vec![BigInt::from(0)]];
        assert_eq!(
            overlattice_datum(&base, u, embedding).unwrap_err(),
            LatticeError::EmbeddingNotIsometric
        );
    }

    #[test]
    fn overlattice_json_round_trip() {
        let over = rank2_split();
        let v = over.to_json_value();
        let back = OverlatticeDatum::from_json_value(&v).unwrap();
        assert_eq!(back, over);
    }

    #[test]
    fn borcherds_index_examples() {
        let u = hyperbolic_plane();
        let idx = borcherds_index(&u, 0, &[0, 0]).unwrap();
        assert_eq!(idx.exponent, rat(1));
        assert_eq!(idx.weight, rat(10));
        assert!(!idx.hodge_degenerate);
        assert!(idx.coset.is_empty());

        let idx = borcherds_index(&u, 2, &[1, 1]).unwrap();
        assert_eq!(idx.exponent, rat(0));
        assert!(idx.hodge_degenerate);

        let two = GramLattice::new(&[vec![2]]).unwrap();
        let idx = borcherds_index(&two, 1, &[0]).unwrap();
        assert_eq!(idx.weight, crate::rational::ratio(21, 2));
        assert_eq!(idx.exponent, rat(0));

        // ⟨4⟩ with h=0, d=1: Δ = d² − 8(h−1) = 9, l = 4, exponent 9/8.
        let four = GramLattice::new(&[vec![4]]).unwrap();
        let idx = borcherds_index(&four, 0, &[1]).unwrap();
        assert_eq!(idx.exponent, crate::rational::ratio(9, 8));
        assert_eq!(idx.coset, vec![big(1)]);
    }

    #[test]
    fn lookup_against_e4e6() {
        let phi = eisenstein(4, 6)
            .unwrap()
            .series
            .mul(&eisenstein(6, 6).unwrap().series);
        let u = hyperbolic_plane();
        assert_eq!(nl_lookup(&phi, &u, 0, &[0, 0]).unwrap(), rat(-264));
        // Δ < 0 vanishes by convention.
        assert_eq!(nl_lookup(&phi, &u, 3, &[0, 0]).unwrap(), rat(0));
        // Δ = 0 reads the constant term.
        assert_eq!(nl_lookup(&phi, &u, 2, &[1, 1]).unwrap(), rat(1));
        // Nontrivial discriminant groups are unsupported.
        let two = GramLattice::new(&[vec![2]]).unwrap();
        assert!(matches!(
            nl_lookup(&phi, &two, 0, &[0]).unwrap_err(),
            LatticeError::NontrivialDiscriminantGroup { .. }
        ));
        // Exponent beyond the series window is reported, not fabricated.
        assert_eq!(
            nl_lookup(&phi, &u, -6, &[0, 0]).unwrap_err(),
            LatticeError::TruncationTooLow {
                needed: 7,
                available: 5
            }
        );
    }
}
