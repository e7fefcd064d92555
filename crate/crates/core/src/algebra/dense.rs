//! Exact multivariate polynomials over `F_p`, stored as a map from exponent
//! vectors to nonzero coefficients.
//!
//! This is the brute-force oracle against which circuit transformations are
//! checked. The map is ordered lexicographically on exponent vectors (variable
//! 0 most significant), which gives a monomial order for exact division.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use super::field::{FieldElement, PrimeField};
use crate::error::{Error, Result};

/// Total-degree cap for the oracle.
pub const DEGREE_CAP: usize = 64;

pub type Exponents = SmallVec<[u16; 8]>;

#[derive(Clone, PartialEq, Eq)]
pub struct DensePoly {
    field: PrimeField,
    nvars: usize,
    terms: BTreeMap<Exponents, FieldElement>,
}

fn exps_add(a: &Exponents, b: &Exponents) -> Exponents {
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

fn total(e: &Exponents) -> usize {
    e.iter().map(|&x| x as usize).sum()
}

impl DensePoly {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        DensePoly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElement, nvars: usize) -> Self {
        let mut p = DensePoly::zero(c.field(), nvars);
        if !c.is_zero() {
            p.terms.insert(SmallVec::from_elem(0, nvars), c);
        }
        p
    }

    pub fn one(field: PrimeField, nvars: usize) -> Self {
        DensePoly::constant(field.one(), nvars)
    }

    /// The variable `x_i` (0-based).
    pub fn var(field: PrimeField, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e: Exponents = SmallVec::from_elem(0, nvars);
        e[i] = 1;
        let mut p = DensePoly::zero(field, nvars);
        p.terms.insert(e, field.one());
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I>(field: PrimeField, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u16>, FieldElement)>,
    {
        let mut p = DensePoly::zero(field, nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length mismatch");
            p.add_term(SmallVec::from_vec(e), c);
        }
        p
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u16]) -> FieldElement {
        self.terms
            .get(exps)
            .copied()
            .unwrap_or_else(|| self.field.zero())
    }

    pub(crate) fn add_term(&mut self, e: Exponents, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Total degree; `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|e| total(e) as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Lowest total degree of a term; `None` for zero.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().map(total).min()
    }

    /// Degree in one variable; `-1` for zero.
    pub fn degree_in(&self, var: usize) -> i64 {
        self.terms
            .keys()
            .map(|e| e[var] as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Degree in the subset `vars`; `-1` for zero.
    pub fn degree_in_set(&self, vars: &[usize]) -> i64 {
        self.terms
            .keys()
            .map(|e| vars.iter().map(|&v| e[v] as i64).sum::<i64>())
            .max()
            .unwrap_or(-1)
    }

    pub fn is_constant(&self) -> bool {
        self.degree() <= 0
    }

    /// The constant coefficient.
    pub fn constant_term(&self) -> FieldElement {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn scale(&self, c: FieldElement) -> DensePoly {
        if c.is_zero() {
            return DensePoly::zero(self.field, self.nvars);
        }
        DensePoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), *v * c)).collect(),
        }
    }

    fn check_same_ring(&self, other: &DensePoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Structural(format!(
                "variable count mismatch: {} vs {}",
                self.nvars, other.nvars
            )));
        }
        if self.field != other.field {
            return Err(Error::Structural("polynomials over different fields".into()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &DensePoly) -> Result<DensePoly> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &DensePoly) -> Result<DensePoly> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -*c);
        }
        Ok(out)
    }

    /// Product without the oracle's degree cap.
    pub fn try_mul_uncapped(&self, other: &DensePoly) -> Result<DensePoly> {
        self.check_same_ring(other)?;
        Ok(self.mul_filtered(other, |_| true))
    }

    fn mul_filtered(&self, other: &DensePoly, keep: impl Fn(&Exponents) -> bool) -> DensePoly {
        let mut out = DensePoly::zero(self.field, self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = exps_add(ea, eb);
                if keep(&e) {
                    out.add_term(e, *ca * *cb);
                }
            }
        }
        out
    }

    /// Product truncated to total degree `<= cap`.
    pub fn mul_truncated_total(&self, other: &DensePoly, cap: usize) -> DensePoly {
        assert_eq!(self.nvars, other.nvars);
        self.mul_filtered(other, |e| total(e) <= cap)
    }

    /// Product reduced modulo `<xvars>^k`.
    pub fn mul_mod_ideal(&self, other: &DensePoly, xvars: &[usize], k: usize) -> DensePoly {
        assert_eq!(self.nvars, other.nvars);
        self.mul_filtered(other, |e| {
            xvars.iter().map(|&v| e[v] as usize).sum::<usize>() < k
        })
    }

    pub fn pow(&self, e: u32) -> DensePoly {
        let mut acc = DensePoly::one(self.field, self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Drops every term whose degree in `xvars` is `>= k`.
    pub fn truncate_mod_ideal(&self, xvars: &[usize], k: usize) -> DensePoly {
        DensePoly {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| xvars.iter().map(|&v| e[v] as usize).sum::<usize>() < k)
                .map(|(e, c)| (e.clone(), *c))
                .collect(),
        }
    }

    /// Keeps only the terms of total degree exactly `j`.
    pub fn homogeneous_component(&self, j: usize) -> DensePoly {
        DensePoly {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total(e) == j)
                .map(|(e, c)| (e.clone(), *c))
                .collect(),
        }
    }

    pub fn eval(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.nvars {
            return Err(Error::Structural(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut t = *c;
            for (x, &k) in point.iter().zip(e.iter()) {
                if k > 0 {
                    t *= x.pow(k as u64);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Coefficients as a polynomial in `var`: entry `i` is the coefficient
    /// of `var^i`, a polynomial in the same ring with `var` absent.
    pub fn coeffs_in(&self, var: usize) -> Vec<DensePoly> {
        let deg = self.degree_in(var);
        if deg < 0 {
            return vec![];
        }
        let mut out = vec![DensePoly::zero(self.field, self.nvars); deg as usize + 1];
        for (e, c) in &self.terms {
            let i = e[var] as usize;
            let mut e2 = e.clone();
            e2[var] = 0;
            out[i].add_term(e2, *c);
        }
        out
    }

    /// Formal partial derivative in `var`.
    pub fn derivative(&self, var: usize) -> DensePoly {
        let mut out = DensePoly::zero(self.field, self.nvars);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut e2 = e.clone();
                e2[var] -= 1;
                out.add_term(e2, *c * self.field.elem(e[var] as u64));
            }
        }
        out
    }

    /// Substitutes `args[i]` for variable `i`. All arguments must share a ring.
    pub fn compose(&self, args: &[DensePoly]) -> Result<DensePoly> {
        if args.len() != self.nvars {
            return Err(Error::Structural(format!(
                "compose: {} arguments for {} variables",
                args.len(),
                self.nvars
            )));
        }
        let Some(first) = args.first() else {
            // Constant polynomial in zero variables.
            return Err(Error::Structural("compose needs at least one argument".into()));
        };
        let (field, nv) = (first.field, first.nvars);
        for a in args {
            first.check_same_ring(a)?;
        }
        let mut out = DensePoly::zero(field, nv);
        // powers[i][k] = args[i]^k, built lazily.
        let mut powers: Vec<Vec<DensePoly>> = args
            .iter()
            .map(|_| vec![DensePoly::one(field, nv)])
            .collect();
        for (e, c) in &self.terms {
            let mut t = DensePoly::constant(*c, nv);
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &args[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    t = &t * &powers[i][k as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Leading term in the lexicographic order of the term map.
    fn leading(&self) -> Option<(&Exponents, &FieldElement)> {
        self.terms.iter().next_back()
    }

    /// Exact division; fails if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &DensePoly) -> Result<DensePoly> {
        self.check_same_ring(divisor)?;
        let (de, dc) = divisor
            .leading()
            .ok_or_else(|| Error::Domain("division by the zero polynomial".into()))?;
        let (de, dcinv) = (de.clone(), dc.inv().expect("nonzero leading coefficient"));
        let mut rem = self.clone();
        let mut quot = DensePoly::zero(self.field, self.nvars);
        while let Some((re, rc)) = rem.leading() {
            if re.iter().zip(de.iter()).any(|(a, b)| a < b) {
                return Err(Error::Domain("division is not exact".into()));
            }
            let qe: Exponents = re.iter().zip(de.iter()).map(|(a, b)| a - b).collect();
            let qc = *rc * dcinv;
            for (e, c) in &divisor.terms {
                rem.add_term(exps_add(e, &qe), -(*c * qc));
            }
            quot.add_term(qe, qc);
        }
        Ok(quot)
    }

    /// Re-embeds into a ring with `nvars` variables, keeping the first
    /// `min(nvars, self.nvars)` exponents. Fails if a dropped variable occurs.
    pub fn with_nvars(&self, nvars: usize) -> Result<DensePoly> {
        let mut out = DensePoly::zero(self.field, nvars);
        for (e, c) in &self.terms {
            if e.iter().skip(nvars).any(|&k| k > 0) {
                return Err(Error::Structural(
                    "cannot drop a variable that occurs in the polynomial".into(),
                ));
            }
            let mut e2: Exponents = e.iter().take(nvars).copied().collect();
            e2.resize(nvars, 0);
            out.add_term(e2, *c);
        }
        Ok(out)
    }

    /// Makes the polynomial monic w.r.t. its lexicographically largest term.
    pub fn monic_lex(&self) -> DensePoly {
        match self.leading() {
            Some((_, c)) => self.scale(c.inv().unwrap()),
            None => self.clone(),
        }
    }
}

impl<'a> Add<&'a DensePoly> for &'a DensePoly {
    type Output = DensePoly;
    /// Panics on a ring mismatch; use [`DensePoly::try_add`] to get an error.
    fn add(self, rhs: &'a DensePoly) -> DensePoly {
        self.try_add(rhs).expect("ring mismatch in DensePoly addition")
    }
}

impl<'a> Sub<&'a DensePoly> for &'a DensePoly {
    type Output = DensePoly;
    fn sub(self, rhs: &'a DensePoly) -> DensePoly {
        self.try_sub(rhs).expect("ring mismatch in DensePoly subtraction")
    }
}

impl<'a> Mul<&'a DensePoly> for &'a DensePoly {
    type Output = DensePoly;
    fn mul(self, rhs: &'a DensePoly) -> DensePoly {
        self.try_mul_uncapped(rhs)
            .expect("ring mismatch in DensePoly multiplication")
    }
}

impl Neg for &DensePoly {
    type Output = DensePoly;
    fn neg(self) -> DensePoly {
        self.scale(-self.field.one())
    }
}

impl fmt::Debug for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Terms in descending lexicographic order, variables named `x1..xn`,
/// coefficients as symmetric residues.
impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let s = c.signed();
            let mag = s.unsigned_abs();
            if idx == 0 {
                if s < 0 {
                    write!(f, "-")?;
                }
            } else if s < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, k)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, mono.join("*"))?;
            }
        }
        Ok(())
    }
}
