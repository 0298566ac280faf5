//! Small dense integer and rational linear algebra: Hermite and Smith normal forms,
//! determinants, inverses. Matrices are row-major `Vec<Vec<_>>`.

use crate::Rat;
use num_integer::Integer;
use num_traits::{One, Zero};

pub type IMat = Vec<Vec<i128>>;
pub type QMat = Vec<Vec<Rat>>;

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut c = vec![vec![0i128; m]; n];
    for i in 0..n {
        for l in 0..k {
            let x = a[i][l];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                c[i][j] += x * b[l][j];
            }
        }
    }
    c
}

pub fn mat_vec(a: &IMat, v: &[i128]) -> Vec<i128> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn to_rat(a: &IMat) -> QMat {
    a.iter()
        .map(|r| r.iter().map(|&x| Rat::from_integer(x)).collect())
        .collect()
}

pub fn qmat_mul(a: &QMat, b: &QMat) -> QMat {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut c = vec![vec![Rat::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                c[i][j] += a[i][l] * b[l][j];
            }
        }
    }
    c
}

pub fn qmat_vec(a: &QMat, v: &[Rat]) -> Vec<Rat> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Rat::zero(), |s, (x, y)| s + x * y))
        .collect()
}

/// Determinant by fraction-free elimination.
pub fn det_int(a: &IMat) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut m = a.clone();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

pub fn det_rat(a: &QMat) -> Rat {
    let n = a.len();
    let mut m = a.clone();
    let mut det = Rat::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Rat::zero();
        };
        if p != k {
            m.swap(k, p);
            det = -det;
        }
        let piv = m[k][k];
        det *= piv;
        for i in k + 1..n {
            let f = m[i][k] / piv;
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let t = m[k][j] * f;
                m[i][j] -= t;
            }
        }
    }
    det
}

pub fn inverse_rat(a: &QMat) -> Option<QMat> {
    let n = a.len();
    let mut m: QMat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(k, p);
        let piv = m[k][k];
        for x in m[k].iter_mut() {
            *x /= piv;
        }
        for i in 0..n {
            if i == k || m[i][k].is_zero() {
                continue;
            }
            let f = m[i][k];
            for j in 0..2 * n {
                let t = m[k][j] * f;
                m[i][j] -= t;
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Row-style Hermite normal form of the lattice spanned by `gens`.
/// Rows are upper echelon with positive pivots and entries above each pivot
/// reduced into `[0, pivot)`. If `modulus` is given, the lattice is assumed to
/// contain `modulus * Z^n` and entries are reduced modulo it along the way.
pub fn hnf(gens: &[Vec<i128>], modulus: Option<i128>) -> IMat {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let n = first.len();
    let mut rows: IMat = gens.to_vec();
    if let Some(md) = modulus {
        for r in rows.iter_mut() {
            for x in r.iter_mut() {
                *x = x.rem_euclid(md);
            }
        }
        for i in 0..n {
            let mut r = vec![0i128; n];
            r[i] = md;
            rows.push(r);
        }
    }
    let mut out: IMat = Vec::new();
    let mut col = 0;
    while col < n && !rows.is_empty() {
        loop {
            let mut best: Option<usize> = None;
            for (i, r) in rows.iter().enumerate() {
                if r[col] != 0 && best.is_none_or(|b| r[col].abs() < rows[b][col].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            let piv = rows.swap_remove(b);
            let mut done = true;
            for r in rows.iter_mut() {
                if r[col] != 0 {
                    let q = Integer::div_floor(&r[col], &piv[col]);
                    for j in col..n {
                        r[j] -= q * piv[j];
                    }
                    if let Some(md) = modulus {
                        for x in r[col + 1..].iter_mut() {
                            *x = x.rem_euclid(md);
                        }
                    }
                    if r[col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                let mut piv = piv;
                if piv[col] < 0 {
                    for x in piv.iter_mut() {
                        *x = -*x;
                    }
                }
                out.push(piv);
                break;
            }
            rows.push(piv);
        }
        rows.retain(|r| r.iter().any(|&x| x != 0));
        col += 1;
    }
    // Pivot columns and back-reduction.
    let pivots: Vec<usize> = out
        .iter()
        .map(|r| r.iter().position(|&x| x != 0).unwrap())
        .collect();
    for k in 0..out.len() {
        let c = pivots[k];
        for i in 0..k {
            let q = Integer::div_floor(&out[i][c], &out[k][c]);
            if q != 0 {
                let src = out[k].clone();
                for j in c..n {
                    out[i][j] -= q * src[j];
                }
            }
        }
    }
    out
}

/// Smith normal form: returns `(u, d, v)` with `u * a * v = diag(d)`, `u`, `v`
/// unimodular and `d[i] | d[i+1]`, all `d[i] >= 0`.
pub fn smith(a: &IMat) -> (IMat, Vec<i128>, IMat) {
    let n = a.len();
    let m = if n == 0 { 0 } else { a[0].len() };
    let mut s = a.clone();
    let mut u = identity(n);
    let mut v = identity(m);
    let r = n.min(m);
    let mut t = 0;
    while t < r {
        // Choose a pivot of minimal absolute value in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..n {
            for j in t..m {
                if s[i][j] != 0 && best.is_none_or(|(bi, bj)| s[i][j].abs() < s[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap(t, pi);
        u.swap(t, pi);
        for row in s.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..n {
            let q = Integer::div_floor(&s[i][t], &s[t][t]);
            if q != 0 {
                for j in 0..m {
                    s[i][j] -= q * s[t][j];
                }
                for j in 0..n {
                    u[i][j] -= q * u[t][j];
                }
            }
            if s[i][t] != 0 {
                clean = false;
            }
        }
        for j in t + 1..m {
            let q = Integer::div_floor(&s[t][j], &s[t][t]);
            if q != 0 {
                for i in 0..n {
                    s[i][j] -= q * s[i][t];
                }
                for i in 0..m {
                    v[i][j] -= q * v[i][t];
                }
            }
            if s[t][j] != 0 {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // Divisibility: fold an offending row into row t.
        let mut bad = None;
        'outer: for i in t + 1..n {
            for j in t + 1..m {
                if s[i][j] % s[t][t] != 0 {
                    bad = Some(i);
                    break 'outer;
                }
            }
        }
        if let Some(i) = bad {
            for j in 0..m {
                let x = s[i][j];
                s[t][j] += x;
            }
            for j in 0..n {
                let x = u[i][j];
                u[t][j] += x;
            }
            continue;
        }
        if s[t][t] < 0 {
            for j in 0..m {
                s[t][j] = -s[t][j];
            }
            for j in 0..n {
                u[t][j] = -u[t][j];
            }
        }
        t += 1;
    }
    let d = (0..r).map(|i| s[i][i]).collect();
    (u, d, v)
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(a: &IMat) -> IMat {
    let inv = inverse_rat(&to_rat(a)).expect("unimodular matrix is invertible");
    inv.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| {
                    assert!(x.is_integer(), "matrix is not unimodular");
                    x.to_integer()
                })
                .collect()
        })
        .collect()
}

/// Lower Cholesky factor of a symmetric positive definite float matrix.
pub fn cholesky(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            if i == j {
                if s <= 0.0 {
                    return None;
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    Some(l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_reconstructs() {
        let a: IMat = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let (u, d, v) = smith(&a);
        assert_eq!(d, vec![2, 6, 12]);
        let s = mat_mul(&mat_mul(&u, &a), &v);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(s[i][j], if i == j { d[i] } else { 0 });
            }
        }
        assert_eq!(det_int(&u).abs(), 1);
        assert_eq!(det_int(&v).abs(), 1);
    }

    #[test]
    fn hnf_of_index_lattice() {
        let h = hnf(&[vec![2, 1], vec![0, 3], vec![4, 5]], None);
        let det: i128 = (0..h.len()).map(|i| h[i][i]).product();
        assert_eq!(det, 6);
        let hm = hnf(&[vec![2, 1], vec![0, 3]], Some(6));
        assert_eq!(hm, vec![vec![2, 1], vec![0, 3]]);
        let full = hnf(&[vec![1, 8]], Some(11));
        assert_eq!(full, vec![vec![1, 8], vec![0, 11]]);
    }

    #[test]
    fn det_and_inverse_agree() {
        let a: IMat = vec![vec![2, 1, 0], vec![1, 4, 1], vec![0, 1, 6]];
        assert_eq!(det_int(&a), 40);
        assert_eq!(det_rat(&to_rat(&a)), Rat::from_integer(40));
        let inv = inverse_rat(&to_rat(&a)).unwrap();
        let p = qmat_mul(&inv, &to_rat(&a));
        assert_eq!(p, to_rat(&identity(3)));
    }
}
