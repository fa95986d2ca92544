//! Exact integer and rational matrix kernels: fraction-free determinants,
//! Smith normal form with recorded transforms, Hermite row reduction,
//! rational linear solves, and signatures of symmetric forms.

use crate::rational::Rational;
use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};

pub type Mat = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &Mat) -> Mat {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    (0..cols)
        .map(|j| (0..rows).map(|i| a[i][j].clone()).collect())
        .collect()
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let (m, k) = (a.len(), if a.is_empty() { 0 } else { a[0].len() });
    let n = if b.is_empty() { 0 } else { b[0].len() };
    assert_eq!(k, b.len(), "inner dimensions must agree");
    let mut out = vec![vec![BigInt::zero(); n]; m];
    for i in 0..m {
        for (l, al) in a[i].iter().enumerate() {
            if al.is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += al * &b[l][j];
            }
        }
    }
    out
}

pub fn matvec(a: &Mat, v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| {
            let mut acc = BigInt::zero();
            for (x, y) in row.iter().zip(v) {
                if !x.is_zero() && !y.is_zero() {
                    acc += x * y;
                }
            }
            acc
        })
        .collect()
}

pub fn column(a: &Mat, j: usize) -> Vec<BigInt> {
    a.iter().map(|row| row[j].clone()).collect()
}

/// vᵀ·G·w for column vectors in the basis of G.
pub fn pair(g: &Mat, v: &[BigInt], w: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for (i, vi) in v.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        for (j, wj) in w.iter().enumerate() {
            if !wj.is_zero() {
                acc += vi * &g[i][j] * wj;
            }
        }
    }
    acc
}

/// Bareiss fraction-free determinant; exact for any square integer matrix.
pub fn det(a: &Mat) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(i) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, i);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Smith normal form data: u·a·v = d with u, v unimodular and d diagonal
/// with nonnegative entries in a divisibility chain.
pub struct Snf {
    pub u: Mat,
    pub d: Mat,
    pub v: Mat,
}

fn swap_cols(m: &mut Mat, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn row_sub(m: &mut Mat, i: usize, t: usize, q: &BigInt) {
    let src = m[t].clone();
    for (x, s) in m[i].iter_mut().zip(&src) {
        *x -= q * s;
    }
}

fn col_sub(m: &mut Mat, j: usize, t: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let s = row[t].clone();
        row[j] -= q * s;
    }
}

fn min_nonzero_in_block(d: &Mat, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.len() {
        for j in t..d[i].len() {
            if d[i][j].is_zero() {
                continue;
            }
            if best.map_or(true, |(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &Mat) -> Snf {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut d = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);
    let mut t = 0usize;
    'pivot: while t < m.min(n) {
        let Some((pi, pj)) = min_nonzero_in_block(&d, t) else {
            break;
        };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut again = false;
            for i in t + 1..m {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = &d[i][t] / &d[t][t];
                if !q.is_zero() {
                    row_sub(&mut d, i, t, &q);
                    row_sub(&mut u, i, t, &q);
                }
                if !d[i][t].is_zero() {
                    // Remainder is smaller than the pivot; promote it.
                    d.swap(t, i);
                    u.swap(t, i);
                    again = true;
                }
            }
            if again {
                continue;
            }
            for j in t + 1..n {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = &d[t][j] / &d[t][t];
                if !q.is_zero() {
                    col_sub(&mut d, j, t, &q);
                    col_sub(&mut v, j, t, &q);
                }
                if !d[t][j].is_zero() {
                    swap_cols(&mut d, t, j);
                    swap_cols(&mut v, t, j);
                    again = true;
                }
            }
            if !again {
                break;
            }
        }
        // Divisibility chain: the pivot must divide the trailing block.
        for i in t + 1..m {
            for j in t + 1..n {
                if !(&d[i][j] % &d[t][t]).is_zero() {
                    let src = d[i].clone();
                    for (x, s) in d[t].iter_mut().zip(&src) {
                        *x += s;
                    }
                    let src = u[i].clone();
                    for (x, s) in u[t].iter_mut().zip(&src) {
                        *x += s;
                    }
                    continue 'pivot;
                }
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    Snf { u, d, v }
}

/// Inverse of a unimodular integer matrix, exactly.
pub fn inverse_unimodular(a: &Mat) -> Mat {
    let n = a.len();
    let arat: Vec<Vec<Rational>> = a
        .iter()
        .map(|row| row.iter().map(|x| Rational::from(x.clone())).collect())
        .collect();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        let x = solve_square(&arat, &e).expect("unimodular matrix is invertible");
        cols.push(x);
    }
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = &cols[j][i];
                    assert!(v.is_integer(), "inverse of a unimodular matrix is integral");
                    v.to_integer()
                })
                .collect()
        })
        .collect()
}

/// Gaussian elimination over ℚ for a square system; None when singular.
pub fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n) && b.len() == n);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let inv = m[col][col].recip();
        for x in m[col][col..].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = std::mem::replace(&mut row[col], Rational::zero());
                for c in col + 1..=n {
                    let delta = &f * &pivot_row[c];
                    row[c] = &row[c] - delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Row-style Hermite reduction: returns a canonical basis (as rows) of the
/// lattice spanned by the input rows. Pivots are positive and entries above
/// each pivot are reduced to [0, pivot).
pub fn hermite_rows(mut rows: Mat) -> Mat {
    if rows.is_empty() {
        return rows;
    }
    let cols = rows[0].len();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                if best.map_or(true, |b| rows[r][col].abs() < rows[b][col].abs()) {
                    best = Some(r);
                }
            }
            let Some(b) = best else {
                break;
            };
            rows.swap(pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = &rows[r][col] / &rows[pivot_row][col];
                let src = rows[pivot_row].clone();
                for (x, s) in rows[r].iter_mut().zip(&src) {
                    *x -= &q * s;
                }
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < rows.len() && !rows[pivot_row][col].is_zero() {
            if rows[pivot_row][col].is_negative() {
                for x in rows[pivot_row].iter_mut() {
                    *x = -x.clone();
                }
            }
            // Reduce the rows above into canonical range.
            use num::Integer;
            let src = rows[pivot_row].clone();
            for r in 0..pivot_row {
                let q = rows[r][col].div_floor(&src[col]);
                if !q.is_zero() {
                    for (x, s) in rows[r].iter_mut().zip(&src) {
                        *x -= &q * s;
                    }
                }
            }
            pivot_row += 1;
        }
    }
    rows.truncate(pivot_row);
    rows
}

/// Signature (p, q) of a symmetric rational form by exact congruence
/// diagonalization; zero eigenvalues (degenerate forms) count in neither.
pub fn signature(a: &Mat) -> (usize, usize) {
    let n = a.len();
    let mut b: Vec<Vec<Rational>> = a
        .iter()
        .map(|row| row.iter().map(|x| Rational::from(x.clone())).collect())
        .collect();
    let (mut pos, mut neg) = (0usize, 0usize);
    let sym_swap = |b: &mut Vec<Vec<Rational>>, x: usize, y: usize| {
        b.swap(x, y);
        for row in b.iter_mut() {
            row.swap(x, y);
        }
    };
    for t in 0..n {
        if b[t][t].is_zero() {
            if let Some(k) = (t + 1..n).find(|&k| !b[k][k].is_zero()) {
                sym_swap(&mut b, t, k);
            } else {
                let mut off = None;
                'search: for i in t..n {
                    for j in i + 1..n {
                        if !b[i][j].is_zero() {
                            off = Some((i, j));
                            break 'search;
                        }
                    }
                }
                let Some((i, j)) = off else {
                    // Remaining block vanishes identically.
                    break;
                };
                // Row/col add makes the (i,i) entry 2·b[i][j] ≠ 0.
                let src = b[j].clone();
                for (x, s) in b[i].iter_mut().zip(&src) {
                    *x = &*x + s;
                }
                for row in b.iter_mut() {
                    let s = row[j].clone();
                    row[i] = &row[i] + s;
                }
                if i != t {
                    sym_swap(&mut b, t, i);
                }
            }
        }
        let pivot = b[t][t].clone();
        if pivot.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in t + 1..n {
            if b[i][t].is_zero() {
                continue;
            }
            let f = &b[i][t] / &pivot;
            let src = b[t].clone();
            for (x, s) in b[i].iter_mut().zip(&src) {
                *x = &*x - &f * s;
            }
            for row in b.iter_mut() {
                let s = row[t].clone();
                row[i] = &row[i] - &f * s;
            }
        }
    }
    (pos, neg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_i64(rows: &[&[i64]]) -> Mat {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn determinants() {
        assert_eq!(det(&from_i64(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(det(&from_i64(&[&[2]])), BigInt::from(2));
        assert_eq!(
            det(&from_i64(&[&[2, 1], &[1, -4]])),
            BigInt::from(-9)
        );
        assert_eq!(
            det(&from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])),
            BigInt::zero()
        );
    }

    #[test]
    fn snf_transforms_are_consistent() {
        let a = from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let snf = smith_normal_form(&a);
        assert_eq!(matmul(&matmul(&snf.u, &a), &snf.v), snf.d);
        assert_eq!(det(&snf.u).abs(), BigInt::one());
        assert_eq!(det(&snf.v).abs(), BigInt::one());
        // Divisor chain from the gcds of k×k minors: 2, 4/2, 624/4.
        let diag: Vec<BigInt> = (0..3).map(|i| snf.d[i][i].clone()).collect();
        assert_eq!(diag, vec![2.into(), 2.into(), 156.into()]);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(snf.d[i][j].is_zero());
                }
            }
        }
    }

    #[test]
    fn snf_of_nonsquare_embedding() {
        let a = from_i64(&[&[1], &[0]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.d[0][0], BigInt::one());
        assert_eq!(matmul(&matmul(&snf.u, &a), &snf.v), snf.d);
    }

    #[test]
    fn unimodular_inverse_round_trip() {
        let a = from_i64(&[&[1, 2], &[1, 3]]);
        let inv = inverse_unimodular(&a);
        assert_eq!(matmul(&a, &inv), identity(2));
    }

    #[test]
    fn hermite_canonical_basis() {
        // Rows spanning the sublattice {(x, y) : x + y even} of Z^2.
        let rows = from_i64(&[&[2, 0], &[1, 1], &[3, 1], &[0, 2]]);
        let h = hermite_rows(rows);
        assert_eq!(h, from_i64(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn signatures() {
        assert_eq!(signature(&from_i64(&[&[0, 1], &[1, 0]])), (1, 1));
        assert_eq!(signature(&from_i64(&[&[2]])), (1, 0));
        assert_eq!(signature(&from_i64(&[&[2, 1], &[1, -4]])), (1, 1));
        assert_eq!(
            signature(&from_i64(&[&[-2, 1], &[1, -2]])),
            (0, 2)
        );
    }

    #[test]
    fn rational_solver() {
        let a = vec![
            vec![Rational::from(BigInt::from(2)), Rational::from(BigInt::from(1))],
            vec![Rational::from(BigInt::from(1)), Rational::from(BigInt::from(-4))],
        ];
        let b = vec![
            Rational::from(BigInt::from(1)),
            Rational::from(BigInt::from(0)),
        ];
        let x = solve_square(&a, &b).unwrap();
        assert_eq!(x[0], crate::rational::ratio(4, 9));
        assert_eq!(x[1], crate::rational::ratio(1, 9));
    }
}
