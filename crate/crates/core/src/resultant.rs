//! Sylvester matrices, resultants in one variable, and the Jacobian of the
//! coefficient-matching system at a univariate seed.

use std::fmt;

use crate::algebra::matrix::{self, Matrix};
use crate::algebra::{DensePoly, FieldElement, PrimeField, UniPoly};
use crate::error::{Error, Result};

/// The `(d1 + d2)`-square Sylvester matrix of `g` (degree `d1`) and `h`
/// (degree `d2`), stored by rows. Row `r` collects the coefficient of `y^r`.
/// Column `c < d2` holds the coefficients of `g` shifted down by `c`;
/// column `d2 + j` holds those of `h` shifted down by `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylvesterMatrix<T> {
    pub d1: usize,
    pub d2: usize,
    pub entries: Vec<Vec<T>>,
}

fn layout<T: Clone>(g: &[T], h: &[T], zero: T) -> Vec<Vec<T>> {
    let (d1, d2) = (g.len() - 1, h.len() - 1);
    let d = d1 + d2;
    let mut m = vec![vec![zero; d]; d];
    for c in 0..d2 {
        for (r, gc) in g.iter().enumerate() {
            m[r + c][c] = gc.clone();
        }
    }
    for j in 0..d1 {
        for (r, hc) in h.iter().enumerate() {
            m[r + j][d2 + j] = hc.clone();
        }
    }
    m
}

/// Sylvester matrix over `F[x]` from coefficient lists (lowest power first).
pub fn sylvester(gcoeffs: &[DensePoly], hcoeffs: &[DensePoly]) -> Result<SylvesterMatrix<DensePoly>> {
    let (Some(gl), Some(hl)) = (gcoeffs.last(), hcoeffs.last()) else {
        return Err(Error::Domain("empty coefficient list".into()));
    };
    if gl.is_zero() || hl.is_zero() {
        return Err(Error::Domain("leading coefficient is zero".into()));
    }
    if gcoeffs.len() < 2 || hcoeffs.len() < 2 {
        return Err(Error::Domain("both polynomials need positive degree".into()));
    }
    let zero = DensePoly::zero(gl.field(), gl.nvars());
    Ok(SylvesterMatrix {
        d1: gcoeffs.len() - 1,
        d2: hcoeffs.len() - 1,
        entries: layout(gcoeffs, hcoeffs, zero),
    })
}

/// Sylvester matrix of two univariates over `F_p`.
pub fn sylvester_univariate(g: &UniPoly, h: &UniPoly) -> Result<SylvesterMatrix<FieldElement>> {
    if g.degree() < 1 || h.degree() < 1 {
        return Err(Error::Domain("both polynomials need positive degree".into()));
    }
    Ok(SylvesterMatrix {
        d1: g.degree() as usize,
        d2: h.degree() as usize,
        entries: layout(g.coeffs(), h.coeffs(), g.field().zero()),
    })
}

impl SylvesterMatrix<FieldElement> {
    pub fn determinant(&self, field: PrimeField) -> FieldElement {
        matrix::determinant(field, &self.entries)
    }

    pub fn rank(&self) -> usize {
        matrix::rank(&self.entries)
    }
}

impl fmt::Display for SylvesterMatrix<DensePoly> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|p| p.to_string()).collect())
            .collect();
        let width = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join(" | "))?;
        }
        Ok(())
    }
}

/// Fraction-free elimination; every division is exact.
fn bareiss(mut a: Vec<Vec<DensePoly>>, field: PrimeField, nvars: usize) -> Result<DensePoly> {
    let n = a.len();
    if n == 0 {
        return Ok(DensePoly::one(field, nvars));
    }
    let mut negate = false;
    let mut prev = DensePoly::one(field, nvars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(DensePoly::zero(field, nvars));
            };
            a.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .map_err(|_| Error::Internal("inexact division in elimination".into()))?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -&det } else { det })
}

/// Determinant of the Sylvester matrix of `g` and `h` in the variable `yvar`.
///
/// The result is checked against the degree bound
/// `d2 * deg g + d1 * deg h - d1 * d2`, which follows from each coefficient
/// of `y^i` having total degree at most `deg - i`.
pub fn resultant_y(g: &DensePoly, h: &DensePoly, yvar: usize) -> Result<DensePoly> {
    if g.nvars() != h.nvars() {
        return Err(Error::Structural("resultant of polynomials in different rings".into()));
    }
    if yvar >= g.nvars() {
        return Err(Error::Structural(format!("variable {yvar} out of range")));
    }
    if g.degree_in(yvar) < 1 || h.degree_in(yvar) < 1 {
        return Err(Error::Domain("both polynomials need positive degree in y".into()));
    }
    let s = sylvester(&g.coeffs_in(yvar), &h.coeffs_in(yvar))?;
    let res = bareiss(s.entries, g.field(), g.nvars())?;
    let bound = s.d2 as i64 * g.degree() + s.d1 as i64 * h.degree() - (s.d1 * s.d2) as i64;
    if res.degree() > bound {
        return Err(Error::Internal(format!(
            "resultant degree {} exceeds bound {bound}",
            res.degree()
        )));
    }
    Ok(res)
}

/// Whether `g` and `h` share a factor of positive degree in `yvar`.
pub fn gcd_is_nontrivial(g: &DensePoly, h: &DensePoly, yvar: usize) -> Result<bool> {
    Ok(resultant_y(g, h, yvar)?.is_zero())
}

/// Jacobian of `Q_0..Q_{d-1}` with respect to `(u_0..u_{d1-1}, w_0..w_{d2-1})`
/// at the seed, where `Q_l = sum_{i+j=l} u_i w_j - f_l` with `u_{d1} = w_{d2} = 1`.
/// Entry `(l, i)` is `w_{l-i}` and entry `(l, d1 + j)` is `u_{l-j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianMatrix {
    pub d1: usize,
    pub d2: usize,
    pub entries: Matrix,
}

impl JacobianMatrix {
    pub fn determinant(&self, field: PrimeField) -> FieldElement {
        matrix::determinant(field, &self.entries)
    }

    pub fn rank(&self) -> usize {
        matrix::rank(&self.entries)
    }

    pub fn inverse(&self, field: PrimeField) -> Option<Matrix> {
        matrix::inverse(field, &self.entries)
    }
}

pub fn jacobian_at_seed(gseed: &UniPoly, hseed: &UniPoly) -> Result<JacobianMatrix> {
    if !gseed.is_monic() || !hseed.is_monic() {
        return Err(Error::Domain("seeds must be monic".into()));
    }
    if gseed.degree() < 1 || hseed.degree() < 1 {
        return Err(Error::Domain("seeds need positive degree".into()));
    }
    let (d1, d2) = (gseed.degree() as usize, hseed.degree() as usize);
    let d = d1 + d2;
    let field = gseed.field();
    let mut a = vec![vec![field.zero(); d]; d];
    for (l, row) in a.iter_mut().enumerate() {
        for i in 0..d1 {
            if l >= i && l - i <= d2 {
                row[i] = hseed.coeff(l - i);
            }
        }
        for j in 0..d2 {
            if l >= j && l - j <= d1 {
                row[d1 + j] = gseed.coeff(l - j);
            }
        }
    }
    Ok(JacobianMatrix { d1, d2, entries: a })
}
