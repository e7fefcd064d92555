//! Prime-field arithmetic over `F_p` with `p < 2^63`.
//!
//! Every [`FieldElement`] carries its [`PrimeField`] so that operator
//! overloading works without a context argument. Mixing elements of two
//! different fields is a logic error and trips a debug assertion.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rand::Rng;

use crate::error::{Error, Result};

/// The Mersenne prime `2^61 - 1`, the default modulus.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

/// A prime modulus. Construct with [`PrimeField::new`], which checks primality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: MERSENNE_61 }
    }
}

impl PrimeField {
    /// Accepts odd primes below `2^63`.
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p >= (1 << 63) {
            return Err(Error::Domain(format!(
                "modulus {p} must be an odd prime below 2^63"
            )));
        }
        if !is_prime(p) {
            return Err(Error::Domain(format!("modulus {p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn mersenne61() -> Self {
        PrimeField { p: MERSENNE_61 }
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.p
    }

    /// Reduces an arbitrary `u64`.
    #[inline]
    pub fn elem(self, v: u64) -> FieldElement {
        FieldElement {
            value: v % self.p,
            field: self,
        }
    }

    pub fn from_i64(self, v: i64) -> FieldElement {
        let r = v.rem_euclid(self.p as i64) as u64;
        FieldElement {
            value: r,
            field: self,
        }
    }

    #[inline]
    pub fn zero(self) -> FieldElement {
        FieldElement {
            value: 0,
            field: self,
        }
    }

    #[inline]
    pub fn one(self) -> FieldElement {
        FieldElement {
            value: 1,
            field: self,
        }
    }

    pub fn random<R: Rng + ?Sized>(self, rng: &mut R) -> FieldElement {
        FieldElement {
            value: rng.gen_range(0..self.p),
            field: self,
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(self, rng: &mut R) -> FieldElement {
        FieldElement {
            value: rng.gen_range(1..self.p),
            field: self,
        }
    }

    /// Checks `p > 2 d^2`, the working assumption for "large enough" characteristic.
    pub fn check_degree(self, degree: usize) -> Result<()> {
        let need = 2u128 * (degree as u128) * (degree as u128);
        if (self.p as u128) <= need {
            return Err(Error::UnsupportedCharacteristic {
                prime: self.p,
                degree,
            });
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn add_raw(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn sub_raw(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub(crate) fn mul_raw(self, a: u64, b: u64) -> u64 {
        let prod = (a as u128) * (b as u128);
        if self.p == MERSENNE_61 {
            let lo = (prod as u64) & MERSENNE_61;
            let hi = (prod >> 61) as u64;
            let s = lo + hi;
            if s >= MERSENNE_61 {
                s - MERSENNE_61
            } else {
                s
            }
        } else {
            (prod % self.p as u128) as u64
        }
    }

    pub(crate) fn pow_raw(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            exp >>= 1;
        }
        acc
    }
}

/// A residue `0 <= value < p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    field: PrimeField,
}

impl FieldElement {
    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn field(self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.value == 1
    }

    pub fn pow(self, exp: u64) -> FieldElement {
        FieldElement {
            value: self.field.pow_raw(self.value, exp),
            field: self.field,
        }
    }

    /// Multiplicative inverse by Fermat; `None` for zero.
    pub fn inv(self) -> Option<FieldElement> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.field.p - 2))
        }
    }

    /// Symmetric representative in `(-p/2, p/2]`, handy for display.
    pub fn signed(self) -> i128 {
        let p = self.field.p;
        if self.value > p / 2 {
            self.value as i128 - p as i128
        } else {
            self.value as i128
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn add(self, rhs: FieldElement) -> FieldElement {
        debug_assert_eq!(self.field, rhs.field);
        FieldElement {
            value: self.field.add_raw(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn sub(self, rhs: FieldElement) -> FieldElement {
        debug_assert_eq!(self.field, rhs.field);
        FieldElement {
            value: self.field.sub_raw(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn mul(self, rhs: FieldElement) -> FieldElement {
        debug_assert_eq!(self.field, rhs.field);
        FieldElement {
            value: self.field.mul_raw(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn neg(self) -> FieldElement {
        FieldElement {
            value: self.field.sub_raw(0, self.value),
            field: self.field,
        }
    }
}

/// Panics on division by zero.
impl Div for FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: FieldElement) -> FieldElement {
        self * rhs.inv().expect("division by zero in F_p")
    }
}

impl AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: FieldElement) {
        *self = *self + rhs;
    }
}

impl SubAssign for FieldElement {
    fn sub_assign(&mut self, rhs: FieldElement) {
        *self = *self - rhs;
    }
}

impl MulAssign for FieldElement {
    fn mul_assign(&mut self, rhs: FieldElement) {
        *self = *self * rhs;
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
