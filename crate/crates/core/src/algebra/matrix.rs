//! Dense matrices over `F_p` as row vectors.

use super::field::{FieldElement, PrimeField};

pub type Matrix = Vec<Vec<FieldElement>>;

pub fn identity(field: PrimeField, n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { field.one() } else { field.zero() })
                .collect()
        })
        .collect()
}

/// Row-echelon form in place; returns the rank and the sign of the row
/// permutation used.
fn echelon(m: &mut Matrix) -> (usize, bool) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut flipped = false;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        if piv != rank {
            m.swap(piv, rank);
            flipped = !flipped;
        }
        let inv = m[rank][col].inv().unwrap();
        for r in rank + 1..rows {
            let factor = m[r][col] * inv;
            if factor.is_zero() {
                continue;
            }
            for c in col..cols {
                let sub = factor * m[rank][c];
                m[r][c] -= sub;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    (rank, flipped)
}

pub fn rank(m: &Matrix) -> usize {
    echelon(&mut m.clone()).0
}

/// Determinant of a square matrix; the empty matrix has determinant 1.
pub fn determinant(field: PrimeField, m: &Matrix) -> FieldElement {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    let mut a = m.clone();
    let (rank, flipped) = echelon(&mut a);
    if rank < n {
        return field.zero();
    }
    let prod = (0..n).fold(field.one(), |acc, i| acc * a[i][i]);
    if flipped {
        -prod
    } else {
        prod
    }
}

/// Gauss-Jordan inverse; `None` if singular.
pub fn inverse(field: PrimeField, m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a: Matrix = m
        .iter()
        .zip(identity(field, n))
        .map(|(r, e)| r.iter().copied().chain(e).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        let inv = a[col][col].inv().unwrap();
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col];
                for c in 0..2 * n {
                    let sub = factor * a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(m: &Matrix, v: &[FieldElement]) -> Vec<FieldElement> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(v[0].field().zero(), |acc, (&a, &b)| acc + a * b)
        })
        .collect()
}
