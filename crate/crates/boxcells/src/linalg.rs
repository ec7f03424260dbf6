//! Tiny dense linear algebra for the low dimensions this crate works in
//! (d rarely exceeds 10). Matrices are row-major `Vec<Vec<T>>`.

use crate::error::{Error, Result};
use crate::numeric::Rat;
use num_traits::Zero;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// x^T M y for a symmetric (or any) matrix M.
pub fn quad_form(m: &[Vec<f64>], x: &[f64], y: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (i, xi) in x.iter().enumerate() {
        acc += xi * dot(&m[i], y);
    }
    acc
}

/// Gauss-Jordan inverse with partial pivoting. Returns None when the matrix
/// is singular to working precision.
pub fn invert_f64(m: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut inv: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot][col].abs() < 1e-300 || !a[pivot][col].is_finite() {
            return None;
        }
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for i in 0..n {
            if i != col {
                let f = a[i][col];
                if f != 0.0 {
                    for j in 0..n {
                        a[i][j] -= f * a[col][j];
                        inv[i][j] -= f * inv[col][j];
                    }
                }
            }
        }
    }
    Some(inv)
}

/// Exact rational inverse; None when singular.
pub fn invert_rat(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rat::from_integer(1.into())
                    } else {
                        Rat::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..n {
                    let s = &f * &a[col][j];
                    a[i][j] = &a[i][j] - &s;
                    let s = &f * &inv[col][j];
                    inv[i][j] = &inv[i][j] - &s;
                }
            }
        }
    }
    Some(inv)
}

fn det_i128_rec(m: &[Vec<i128>]) -> Result<i128> {
    let n = m.len();
    if n == 1 {
        return Ok(m[0][0]);
    }
    let mut det: i128 = 0;
    for (j, lead) in m[0].iter().enumerate() {
        if *lead == 0 {
            continue;
        }
        let minor: Vec<Vec<i128>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, v)| *v)
                    .collect()
            })
            .collect();
        let sub = det_i128_rec(&minor)?;
        let term = lead
            .checked_mul(sub)
            .ok_or_else(|| Error::Numerical("integer determinant overflow".into()))?;
        det = if j % 2 == 0 {
            det.checked_add(term)
        } else {
            det.checked_sub(term)
        }
        .ok_or_else(|| Error::Numerical("integer determinant overflow".into()))?;
    }
    Ok(det)
}

/// Exact determinant of a small integer matrix.
pub fn det_i64(m: &[Vec<i64>]) -> Result<i64> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch);
    }
    if n > 10 {
        return Err(Error::DimensionTooLarge { dim: n, max: 10 });
    }
    let wide: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let d = det_i128_rec(&wide)?;
    i64::try_from(d).map_err(|_| Error::Numerical("determinant exceeds i64".into()))
}

/// Adjugate of a small integer matrix, so that `m * adj = det * I`.
pub fn adjugate_i64(m: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = m.len();
    if n == 1 {
        return Ok(vec![vec![1]]);
    }
    let wide: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let mut adj = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i128>> = wide
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != i)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, v)| *v)
                        .collect()
                })
                .collect();
            let cof = det_i128_rec(&minor)?;
            let signed = if (i + j) % 2 == 0 { cof } else { -cof };
            // adjugate = transpose of the cofactor matrix
            adj[j][i] = i64::try_from(signed)
                .map_err(|_| Error::Numerical("adjugate entry exceeds i64".into()))?;
        }
    }
    Ok(adj)
}

pub fn mat_vec_i64(m: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}
