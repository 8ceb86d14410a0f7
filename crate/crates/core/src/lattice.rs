//! Exact integer linear algebra on small square lattices.
//!
//! Matrices are row-major `Vec<Vec<i64>>`. Intermediate products are taken
//! in `i128` and every narrowing is checked, so an overflow surfaces as a
//! panic instead of a wrong answer.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type IntMatrix = Vec<Vec<i64>>;

fn narrow(x: i128) -> i64 {
    i64::try_from(x).expect("integer overflow in lattice arithmetic")
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn transpose(m: &IntMatrix) -> IntMatrix {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    (0..cols).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| narrow((0..inner).map(|k| row[k] as i128 * b[k][j] as i128).sum()))
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &IntMatrix, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| narrow(row.iter().zip(v).map(|(&x, &y)| x as i128 * y as i128).sum()))
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &IntMatrix) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    narrow(sign * a[n - 1][n - 1])
}

fn to_rational(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    m.iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect()
}

/// Gauss-Jordan inverse over the rationals; `None` for singular input.
pub fn inverse_rational(m: &IntMatrix) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a = to_rational(m);
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                let t = &factor * &a[col][j];
                a[r][j] = &a[r][j] - t;
                let t = &factor * &inv[col][j];
                inv[r][j] = &inv[r][j] - t;
            }
        }
    }
    Some(inv)
}

/// Exact solution of `m · x = rhs`.
pub fn solve_rational(m: &IntMatrix, rhs: &[i64]) -> Option<Vec<BigRational>> {
    let inv = inverse_rational(m)?;
    Some(
        inv.iter()
            .map(|row| {
                row.iter()
                    .zip(rhs)
                    .fold(BigRational::zero(), |acc, (c, &b)| acc + c * BigInt::from(b))
            })
            .collect(),
    )
}

/// Adjugate and determinant, so that `m⁻¹ = adj / det`.
pub fn adjugate(m: &IntMatrix) -> (IntMatrix, i64) {
    let d = det(m);
    assert!(d != 0, "adjugate of a singular matrix");
    let inv = inverse_rational(m).expect("nonsingular");
    let scale = BigRational::from_integer(BigInt::from(d));
    let adj = inv
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let y = x * &scale;
                    assert!(y.is_integer());
                    y.to_integer().to_i64().expect("adjugate entry overflow")
                })
                .collect()
        })
        .collect();
    (adj, d)
}

/// `a⁻¹·b` when it is an integer matrix.
pub fn left_divide(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    let (adj, d) = adjugate(a);
    let prod = mat_mul(&adj, b);
    prod.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| if x % d == 0 { Some(x / d) } else { None })
                .collect()
        })
        .collect()
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// The result is in row echelon form with positive pivots; entries above a
/// pivot lie in `[0, pivot)`. Zero rows are dropped, so a full-rank lattice
/// in `Z^n` yields an `n×n` upper-triangular basis.
pub fn hnf_rows(rows: &[Vec<i64>], n: usize) -> IntMatrix {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .filter(|r| r.iter().any(|&x| x != 0))
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut r = 0;
    for col in 0..n {
        if r == a.len() {
            break;
        }
        loop {
            let best = (r..a.len())
                .filter(|&i| a[i][col] != 0)
                .min_by_key(|&i| a[i][col].abs());
            let Some(best) = best else { break };
            a.swap(r, best);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][col] != 0 {
                    let q = a[i][col].div_euclid(a[r][col]);
                    for j in col..n {
                        a[i][j] -= q * a[r][j];
                    }
                    if a[i][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if r < a.len() && a[r][col] != 0 {
            if a[r][col] < 0 {
                for x in a[r].iter_mut() {
                    *x = -*x;
                }
            }
            for i in 0..r {
                let q = a[i][col].div_euclid(a[r][col]);
                if q != 0 {
                    for j in col..n {
                        a[i][j] -= q * a[r][j];
                    }
                }
            }
            r += 1;
        }
        a.retain(|row| row.iter().any(|&x| x != 0));
    }
    a.into_iter()
        .map(|row| row.into_iter().map(narrow).collect())
        .collect()
}

/// Reduces `v` modulo a full-rank lattice given by its square HNF row basis.
/// The result is the unique representative with `0 ≤ v_i < hnf[i][i]`.
pub fn reduce_mod_hnf(v: &[i64], hnf: &IntMatrix) -> Vec<i64> {
    let mut out: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    for (i, row) in hnf.iter().enumerate() {
        let q = out[i].div_euclid(row[i] as i128);
        if q != 0 {
            for j in i..out.len() {
                out[j] -= q * row[j] as i128;
            }
        }
    }
    out.into_iter().map(narrow).collect()
}

/// Membership of `v` in the row span of a square HNF basis.
pub fn hnf_contains(hnf: &IntMatrix, v: &[i64]) -> bool {
    reduce_mod_hnf(v, hnf).iter().all(|&x| x == 0)
}

/// Smith normal form `u · m · v = diag`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<i64>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

pub fn smith(m: &IntMatrix) -> Smith {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = identity(rows)
        .into_iter()
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect();
    let mut v: Vec<Vec<i128>> = identity(cols)
        .into_iter()
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect();

    let swap_cols = |mat: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        for row in mat.iter_mut() {
            row.swap(i, j);
        }
    };

    for t in 0..rows.min(cols) {
        loop {
            let mut pivot = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0 && pivot.map_or(true, |(pi, pj): (usize, usize)| a[i][j].abs() < a[pi][pj].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            a.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[i][t] / a[t][t];
                if q != 0 {
                    for j in 0..cols {
                        a[i][j] -= q * a[t][j];
                    }
                    for j in 0..rows {
                        u[i][j] -= q * u[t][j];
                    }
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / a[t][t];
                if q != 0 {
                    for i in 0..rows {
                        a[i][j] -= q * a[i][t];
                    }
                    for i in 0..cols {
                        v[i][j] -= q * v[i][t];
                    }
                }
                dirty |= a[t][j] != 0;
            }
            if dirty {
                continue;
            }
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % a[t][t] != 0));
            match offender {
                Some(i) => {
                    for j in 0..cols {
                        a[t][j] += a[i][j];
                    }
                    for j in 0..rows {
                        u[t][j] += u[i][j];
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for j in 0..cols {
                a[t][j] = -a[t][j];
            }
            for j in 0..rows {
                u[t][j] = -u[t][j];
            }
        }
    }
    let back = |mat: Vec<Vec<i128>>| -> IntMatrix {
        mat.into_iter().map(|r| r.into_iter().map(narrow).collect()).collect()
    };
    Smith {
        diag: (0..rows.min(cols)).map(|i| narrow(a[i][i])).collect(),
        u: back(u),
        v: back(v),
    }
}

/// Integer inverse of a unimodular matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    let (adj, d) = adjugate(m);
    assert!(d.abs() == 1, "matrix is not unimodular");
    adj.into_iter()
        .map(|r| r.into_iter().map(|x| x * d).collect())
        .collect()
}

pub fn rational_to_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn is_positive(q: &BigRational) -> bool {
    q.is_positive()
}
