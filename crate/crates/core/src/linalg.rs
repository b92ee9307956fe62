//! Dense exact linear algebra over the integers and rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type RatMatrix = Vec<Vec<BigRational>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn to_rat(m: &[Vec<BigInt>]) -> RatMatrix {
    m.iter()
        .map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect()
}

pub fn mul_int(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> IntMatrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn mul_rat(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> RatMatrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(BigRational::zero(), |acc, k| acc + &row[k] * &b[k][j])
                })
                .collect()
        })
        .collect()
}

/// `Bᵀ G B` for an integer Gram matrix and an integer basis change (columns are new basis vectors).
pub fn congruence_int(g: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> IntMatrix {
    mul_int(&mul_int(&transpose(b), g), b)
}

pub fn congruence_rat(g: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> RatMatrix {
    mul_rat(&mul_rat(&transpose(b), g), b)
}

/// Fraction-free (Bareiss) determinant.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: IntMatrix = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn det_rat(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            a.swap(p, k);
            d = -d;
        }
        d *= &a[k][k];
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
        }
    }
    d
}

/// Gauss–Jordan inverse; `None` when singular.
pub fn inverse(m: &[Vec<BigRational>]) -> Option<RatMatrix> {
    let n = m.len();
    let mut a = m.to_vec();
    let mut inv: RatMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(p, k);
        inv.swap(p, k);
        let piv = a[k][k].clone();
        for j in 0..n {
            a[k][j] /= &piv;
            inv[k][j] /= &piv;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..n {
                let (x, y) = (&f * &a[k][j], &f * &inv[k][j]);
                a[i][j] -= x;
                inv[i][j] -= y;
            }
        }
    }
    Some(inv)
}

pub fn rank_rat(m: &[Vec<BigRational>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let mut a = m.to_vec();
    let (rows, cols) = (a.len(), a[0].len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..rows {
            let f = &a[i][c] / &a[r][c];
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = &f * &a[r][j];
                a[i][j] -= v;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Rational basis of the right kernel `{x : m x = 0}`.
pub fn kernel_rat(m: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut a = m.to_vec();
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let piv = a[r][c].clone();
        for j in 0..cols {
            a[r][j] /= &piv;
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..cols {
                let v = &f * &a[r][j];
                a[i][j] -= v;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

/// Smith normal form `left · m · right = diag`, with `left`, `right` unimodular and
/// non-negative diagonal entries each dividing the next.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

pub fn smith(m: &[Vec<BigInt>]) -> Smith {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a = m.to_vec();
    let mut left = identity(rows);
    let mut right = identity(cols);
    let steps = rows.min(cols);
    let mut diag = Vec::with_capacity(steps);

    for t in 0..steps {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            a.swap(t, pi);
            left.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in right.iter_mut() {
                row.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in 0..cols {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
                for j in 0..rows {
                    let v = &q * &left[t][j];
                    left[i][j] -= v;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in 0..rows {
                    let v = &q * &a[i][t];
                    a[i][j] -= v;
                }
                for i in 0..cols {
                    let v = &q * &right[i][t];
                    right[i][j] -= v;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match bad_row {
                Some(i) => {
                    for j in 0..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                    for j in 0..rows {
                        let v = left[i][j].clone();
                        left[t][j] += v;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for j in 0..cols {
                a[t][j] = -a[t][j].clone();
            }
            for j in 0..rows {
                left[t][j] = -left[t][j].clone();
            }
        }
        diag.push(a[t][t].clone());
    }
    Smith { diag, left, right }
}

/// Row echelon basis of the ℤ-span of the given integer vectors.
pub fn row_basis(gens: &[Vec<BigInt>]) -> IntMatrix {
    let mut rows: IntMatrix = gens.to_vec();
    if rows.is_empty() {
        return rows;
    }
    let cols = rows[0].len();
    let mut r = 0;
    for c in 0..cols {
        loop {
            let piv = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()));
            let Some(p) = piv else { break };
            rows.swap(r, p);
            let mut clean = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                for j in 0..cols {
                    let v = &q * &rows[r][j];
                    rows[i][j] -= v;
                }
                clean &= rows[i][c].is_zero();
            }
            if clean {
                if rows[r][c].is_negative() {
                    for x in rows[r].iter_mut() {
                        *x = -x.clone();
                    }
                }
                r += 1;
                break;
            }
        }
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

/// Replaces the trailing block after pivot `k` by its Schur complement.
fn schur_step(a: &mut RatMatrix, k: usize, size: usize) {
    let piv = a[k][k].clone();
    for i in k + 1..size {
        if a[i][k].is_zero() {
            continue;
        }
        let f = &a[i][k] / &piv;
        for j in k + 1..size {
            let v = &f * &a[k][j];
            a[i][j] -= v;
        }
    }
    for i in k + 1..size {
        a[i][k] = BigRational::zero();
        a[k][i] = BigRational::zero();
    }
}

/// Diagonal of a symmetric congruence diagonalization `Pᵀ g P = diag(d)`.
/// Returns `None` when `g` is degenerate.
pub fn diagonalize_symmetric(g: &[Vec<BigRational>]) -> Option<Vec<BigRational>> {
    let n = g.len();
    let mut a = g.to_vec();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // e_k <- e_k + e_j gives a_kk = 2 a_kj since a_jj = 0
                for i in 0..n {
                    let v = a[j][i].clone();
                    a[k][i] += v;
                }
                for i in 0..n {
                    let v = a[i][j].clone();
                    a[i][k] += v;
                }
            } else {
                return None;
            }
        }
        let piv = a[k][k].clone();
        schur_step(&mut a, k, n);
        out.push(piv);
    }
    Some(out)
}

pub fn is_positive_definite(g: &[Vec<BigInt>]) -> bool {
    match diagonalize_symmetric(&to_rat(g)) {
        Some(d) => d.iter().all(|x| x.is_positive()),
        None => false,
    }
}

/// Inertia (positive, negative, zero) of a symmetric rational matrix.
pub fn inertia(g: &[Vec<BigRational>]) -> (usize, usize, usize) {
    let n = g.len();
    let mut a = g.to_vec();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut k = 0;
    let mut size = n;
    while k < size {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..size).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..size).find(|&j| !a[k][j].is_zero()) {
                for i in 0..size {
                    let v = a[j][i].clone();
                    a[k][i] += v;
                }
                for i in 0..size {
                    let v = a[i][j].clone();
                    a[i][k] += v;
                }
            } else {
                // row k vanishes in the remaining block: a null direction
                zero += 1;
                a.swap(k, size - 1);
                for row in a.iter_mut() {
                    row.swap(k, size - 1);
                }
                size -= 1;
                continue;
            }
        }
        let piv = a[k][k].clone();
        schur_step(&mut a, k, size);
        if piv.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        k += 1;
    }
    (pos, neg, zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let g6 = m(&[&[2, 0, 0, -1], &[0, 2, 0, -1], &[0, 0, 2, -3], &[-1, -1, -3, 2]]);
        assert_eq!(det(&g6), int(-28));
        let z = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(det(&z), int(-1));
        assert_eq!(det_rat(&to_rat(&g6)), BigRational::from_integer(int(-28)));
    }

    #[test]
    fn smith_transforms_reproduce_diagonal() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith(&a);
        assert_eq!(s.diag, vec![int(2), int(6), int(12)]);
        let d = mul_int(&mul_int(&s.left, &a), &s.right);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { s.diag[i].clone() } else { int(0) };
                assert_eq!(d[i][j], want);
            }
        }
        assert!(det(&s.left).abs().is_one());
        assert!(det(&s.right).abs().is_one());
    }

    #[test]
    fn row_basis_spans_generators() {
        let b = row_basis(&m(&[&[2, 0], &[0, 2], &[1, 1]]));
        assert_eq!(b.len(), 2);
        assert_eq!(det(&b).abs(), int(2));
    }

    #[test]
    fn inertia_with_zero_pivots() {
        let h = to_rat(&m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]));
        assert_eq!(inertia(&h), (1, 1, 1));
        let d = diagonalize_symmetric(&to_rat(&m(&[&[0, 1], &[1, 0]]))).unwrap();
        assert_eq!(d.iter().filter(|x| x.is_negative()).count(), 1);
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = to_rat(&m(&[&[1, 2, 3], &[2, 4, 6]]));
        let k = kernel_rat(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &a {
                let s = row.iter().zip(v).fold(BigRational::zero(), |acc, (x, y)| acc + x * y);
                assert!(s.is_zero());
            }
        }
    }
}
