//! Dense univariate polynomials over `F_p`, coefficients lowest power first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{FieldElement, PrimeField};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: PrimeField,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    /// Trailing zero coefficients are stripped.
    pub fn new(field: PrimeField, coeffs: Vec<FieldElement>) -> Self {
        let mut p = UniPoly { field, coeffs };
        p.trim();
        p
    }

    pub fn from_u64s(field: PrimeField, coeffs: &[u64]) -> Self {
        UniPoly::new(field, coeffs.iter().map(|&c| field.elem(c)).collect())
    }

    pub fn from_i64s(field: PrimeField, coeffs: &[i64]) -> Self {
        UniPoly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: PrimeField) -> Self {
        UniPoly {
            field,
            coeffs: vec![],
        }
    }

    pub fn one(field: PrimeField) -> Self {
        UniPoly::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        UniPoly::new(c.field(), vec![c])
    }

    /// The monomial `y`.
    pub fn y(field: PrimeField) -> Self {
        UniPoly::new(field, vec![field.zero(), field.one()])
    }

    /// `y - r`.
    pub fn linear_root(r: FieldElement) -> Self {
        UniPoly::new(r.field(), vec![-r, r.field().one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `y^i`, zero past the end.
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading().inv() {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: FieldElement) -> UniPoly {
        UniPoly::new(self.field, self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * self.field.elem(i as u64))
                .collect(),
        )
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        if divisor.is_zero() {
            return Err(Error::Domain("polynomial division by zero".into()));
        }
        let dd = divisor.degree() as usize;
        let lead_inv = divisor.leading().inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return Ok((UniPoly::zero(self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd] * lead_inv;
            quot[i] = c;
            if !c.is_zero() {
                for (j, &dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= c * dc;
                }
            }
        }
        rem.truncate(dd);
        Ok((UniPoly::new(self.field, quot), UniPoly::new(self.field, rem)))
    }

    pub fn rem(&self, divisor: &UniPoly) -> Result<UniPoly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact quotient; errors if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Domain("univariate division is not exact".into()));
        }
        Ok(q)
    }

    /// `self^exp mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut exp: u64, modulus: &UniPoly) -> Result<UniPoly> {
        let mut base = self.rem(modulus)?;
        let mut acc = UniPoly::one(self.field).rem(modulus)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = (&acc * &base).rem(modulus)?;
            }
            base = (&base * &base).rem(modulus)?;
            exp >>= 1;
        }
        Ok(acc)
    }

    pub fn pow(&self, exp: u32) -> UniPoly {
        let mut acc = UniPoly::one(self.field);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Lagrange interpolation through `(xs[i], ys[i])`; the `xs` must be distinct.
    pub fn interpolate(xs: &[FieldElement], ys: &[FieldElement]) -> Result<UniPoly> {
        if xs.len() != ys.len() || xs.is_empty() {
            return Err(Error::Structural(
                "interpolation needs a nonempty set of points with matching values".into(),
            ));
        }
        // Newton divided differences.
        let n = xs.len();
        let mut dd: Vec<FieldElement> = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let den = xs[i] - xs[i - j];
                let inv = den
                    .inv()
                    .ok_or_else(|| Error::Domain("repeated interpolation abscissa".into()))?;
                dd[i] = (dd[i] - dd[i - 1]) * inv;
            }
        }
        let mut acc = UniPoly::constant(dd[n - 1]);
        for i in (0..n - 1).rev() {
            acc = &(&acc * &UniPoly::linear_root(xs[i])) + &UniPoly::constant(dd[i]);
        }
        Ok(acc)
    }
}

/// Monic GCD by the Euclidean algorithm; errors when both inputs are zero.
pub fn uni_gcd(a: &UniPoly, b: &UniPoly) -> Result<UniPoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::Domain("gcd(0, 0) is undefined".into()));
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_zero() {
        let r2 = r0.rem(&r1)?;
        r0 = r1;
        r1 = r2;
    }
    Ok(r0.monic())
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &'a UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(
            self.field,
            (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect(),
        )
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &'a UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(
            self.field,
            (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect(),
        )
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &'a UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(self.field, out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.field, self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.signed();
            let sign = if s < 0 { "-" } else { "+" };
            if first {
                if s < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = s.unsigned_abs();
            match (i, mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, 1) => write!(f, "y")?,
                (1, _) => write!(f, "{mag}*y")?,
                (_, 1) => write!(f, "y^{i}")?,
                _ => write!(f, "{mag}*y^{i}")?,
            }
        }
        Ok(())
    }
}
