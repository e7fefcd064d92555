//! Exact prime-field arithmetic and the dense polynomial oracle.

pub mod dense;
pub mod matrix;
pub mod field;
pub mod univariate;

pub use dense::{DensePoly, DEGREE_CAP};
pub use field::{is_prime, FieldElement, PrimeField, MERSENNE_61};
pub use univariate::{uni_gcd, UniPoly};

use crate::error::{Error, Result};

/// Exact product, enforcing the oracle's total-degree cap.
pub fn poly_mul(a: &DensePoly, b: &DensePoly) -> Result<DensePoly> {
    let out = a.try_mul_uncapped(b)?;
    if out.degree() > DEGREE_CAP as i64 {
        return Err(Error::Capacity(format!(
            "product degree {} exceeds the oracle cap {DEGREE_CAP}",
            out.degree()
        )));
    }
    Ok(out)
}

pub fn poly_eval(a: &DensePoly, point: &[FieldElement]) -> Result<FieldElement> {
    a.eval(point)
}

/// Reduces modulo `<xvars>^k`: terms of `xvars`-degree `>= k` are dropped.
pub fn truncate_mod_ideal(a: &DensePoly, xvars: &[usize], k: usize) -> DensePoly {
    a.truncate_mod_ideal(xvars, k)
}

/// First-order expansion `Q(base) + sum_i dQ/dz_i(base) * delta_i`.
///
/// `q` lives in `m` variables `z_1..z_m`; `base` and `delta` are `m`
/// polynomials over a common ring. Every term of every `delta_i` must have
/// total degree at least `k`, in which case the result agrees with
/// `Q(base + delta)` modulo `<x>^(k+1)` (for `k >= 1`).
pub fn linearized_compose(
    q: &DensePoly,
    base: &[DensePoly],
    delta: &[DensePoly],
    k: usize,
) -> Result<DensePoly> {
    if base.len() != q.nvars() || delta.len() != q.nvars() {
        return Err(Error::Structural(format!(
            "Q has {} variables but got {} base and {} delta entries",
            q.nvars(),
            base.len(),
            delta.len()
        )));
    }
    for (i, d) in delta.iter().enumerate() {
        if d.order().is_some_and(|o| o < k) {
            return Err(Error::Domain(format!(
                "delta[{i}] has a term of degree below {k}"
            )));
        }
    }
    let mut acc = q.compose(base)?;
    for (i, d) in delta.iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        let partial = q.derivative(i).compose(base)?;
        acc = acc.try_add(&partial.try_mul_uncapped(d)?)?;
    }
    Ok(acc)
}
