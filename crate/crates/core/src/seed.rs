//! Univariate factorization over `F_p`, used to seed the lift from the
//! image of `f` at the origin.

use std::cmp::Ordering;

use rand::Rng;

use crate::algebra::{uni_gcd, FieldElement, PrimeField, UniPoly};
use crate::error::{Error, Result};

/// Retry cap for each equal-degree split.
pub const SPLIT_RETRIES: usize = 64;

/// Orders by degree, then by coefficients from the top.
pub fn uni_cmp(a: &UniPoly, b: &UniPoly) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        a.coeffs()
            .iter()
            .rev()
            .map(|c| c.value())
            .cmp(b.coeffs().iter().rev().map(|c| c.value()))
    })
}

/// Yun's squarefree decomposition: pairwise coprime squarefree parts `a_i`
/// with `u = prod a_i^{m_i}`, sorted by multiplicity.
pub fn squarefree_decompose(u: &UniPoly) -> Result<Vec<(UniPoly, u32)>> {
    if u.degree() < 1 || !u.is_monic() {
        return Err(Error::Domain("squarefree decomposition needs a monic nonconstant input".into()));
    }
    let field = u.field();
    if field.modulus() <= u.degree() as u64 {
        return Err(Error::UnsupportedCharacteristic {
            prime: field.modulus(),
            degree: u.degree() as usize,
        });
    }
    let du = u.derivative();
    let a0 = uni_gcd(u, &du)?;
    let mut b = u.div_exact(&a0)?;
    let c = du.div_exact(&a0)?;
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut mult = 1u32;
    while b.degree() > 0 {
        let a = uni_gcd(&b, &d)?;
        let nb = b.div_exact(&a)?;
        let c = d.div_exact(&a)?;
        d = &c - &nb.derivative();
        if a.degree() > 0 {
            out.push((a, mult));
        }
        b = nb;
        mult += 1;
    }
    Ok(out)
}

/// `base^(p^k) mod m` by repeated `p`-th powers.
fn frobenius(base: &UniPoly, k: usize, m: &UniPoly) -> Result<UniPoly> {
    let p = base.field().modulus();
    let mut acc = base.rem(m)?;
    for _ in 0..k {
        acc = acc.pow_mod(p, m)?;
    }
    Ok(acc)
}

/// Distinct-degree factorization: pairs `(product of all degree-k factors, k)`.
fn distinct_degree(u: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    let field = u.field();
    let y = UniPoly::y(field);
    let mut rest = u.clone();
    let mut h = y.clone();
    let mut out = Vec::new();
    let mut k = 0;
    while rest.degree() >= 2 * (k as i64 + 1) {
        k += 1;
        h = frobenius(&h, 1, &rest)?;
        let g = uni_gcd(&(&h - &y), &rest)?;
        if g.degree() > 0 {
            rest = rest.div_exact(&g)?;
            h = h.rem(&rest)?;
            out.push((g, k));
        }
    }
    if rest.degree() > 0 {
        let k = rest.degree() as usize;
        out.push((rest, k));
    }
    Ok(out)
}

/// `a^((p^k - 1) / 2) mod m`, computed as `(prod_{i<k} a^(p^i))^((p-1)/2)`.
fn half_power(a: &UniPoly, k: usize, m: &UniPoly) -> Result<UniPoly> {
    let p = a.field().modulus();
    let mut norm = UniPoly::one(a.field());
    let mut conj = a.rem(m)?;
    for i in 0..k {
        if i > 0 {
            conj = frobenius(&conj, 1, m)?;
        }
        norm = (&norm * &conj).rem(m)?;
    }
    norm.pow_mod((p - 1) / 2, m)
}

/// Splits a product of distinct irreducibles of degree `k` into its factors.
fn equal_degree<R: Rng + ?Sized>(g: &UniPoly, k: usize, rng: &mut R) -> Result<Vec<UniPoly>> {
    if g.degree() as usize == k {
        return Ok(vec![g.clone()]);
    }
    let field = g.field();
    for attempt in 0..SPLIT_RETRIES {
        // Linear shifts y + c first; a random element of full degree if they keep failing.
        let probe = if attempt < SPLIT_RETRIES / 4 {
            &UniPoly::y(field) + &UniPoly::constant(field.random(rng))
        } else {
            let deg = g.degree() as usize;
            UniPoly::new(field, (0..deg).map(|_| field.random(rng)).collect())
        };
        if probe.degree() < 1 {
            continue;
        }
        let t = &half_power(&probe, k, g)? - &UniPoly::one(field);
        if t.is_zero() {
            continue;
        }
        let s = uni_gcd(&t, g)?;
        if s.degree() > 0 && s.degree() < g.degree() {
            let other = g.div_exact(&s)?;
            let mut out = equal_degree(&s, k, rng)?;
            out.extend(equal_degree(&other, k, rng)?);
            return Ok(out);
        }
    }
    Err(Error::RetriesExhausted(format!(
        "equal-degree split of a degree-{} product failed {SPLIT_RETRIES} times",
        g.degree()
    )))
}

/// Monic irreducible factors of a monic squarefree `u`, sorted.
pub fn factor_univariate<R: Rng + ?Sized>(u: &UniPoly, rng: &mut R) -> Result<Vec<UniPoly>> {
    if u.degree() < 1 || !u.is_monic() {
        return Err(Error::Domain("factorization needs a monic nonconstant input".into()));
    }
    let mut out = Vec::new();
    for (g, k) in distinct_degree(u)? {
        out.extend(equal_degree(&g, k, rng)?);
    }
    out.sort_by(uni_cmp);
    Ok(out)
}

/// Rabin's test: `u` of degree `n` is irreducible iff `y^(p^n) = y mod u` and
/// `gcd(y^(p^(n/q)) - y, u) = 1` for every prime `q | n`.
pub fn is_irreducible(u: &UniPoly) -> Result<bool> {
    let n = u.degree();
    if n < 1 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    let n = n as usize;
    let u = u.monic();
    let y = UniPoly::y(u.field());
    let mut primes = Vec::new();
    let mut m = n;
    let mut q = 2;
    while m > 1 {
        if m % q == 0 {
            primes.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    for q in primes {
        let t = &frobenius(&y, n / q, &u)? - &y;
        if uni_gcd(&t, &u)?.degree() > 0 {
            return Ok(false);
        }
    }
    Ok((&frobenius(&y, n, &u)? - &y).rem(&u)?.is_zero())
}

/// Some `r` with `r^e = c`, or `None` if `c` is not an `e`-th power.
pub fn eth_root<R: Rng + ?Sized>(c: FieldElement, e: u64, rng: &mut R) -> Result<Option<FieldElement>> {
    if c.is_zero() {
        return Err(Error::Domain("root of zero requested".into()));
    }
    let field = c.field();
    if e == 0 || e >= field.modulus() {
        return Err(Error::Domain(format!("root index {e} out of range")));
    }
    if e == 1 {
        return Ok(Some(c));
    }
    // Only the linear factors of z^e - c matter: gcd with z^p - z isolates them.
    let mut coeffs = vec![field.zero(); e as usize + 1];
    coeffs[0] = -c;
    coeffs[e as usize] = field.one();
    let target = UniPoly::new(field, coeffs);
    let y = UniPoly::y(field);
    let lin = uni_gcd(&(&frobenius(&y, 1, &target)? - &y), &target)?;
    if lin.degree() < 1 {
        return Ok(None);
    }
    let roots = equal_degree(&lin, 1, rng)?;
    Ok(roots.iter().map(|r| -r.coeff(0)).min_by_key(|r| r.value()))
}

/// The univariate image of a normalized `f` and its factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedFactorization {
    pub image: UniPoly,
    /// Distinct monic irreducibles with multiplicities, sorted.
    pub factors: Vec<(UniPoly, u32)>,
}

impl SeedFactorization {
    pub fn new<R: Rng + ?Sized>(image: &UniPoly, rng: &mut R) -> Result<Self> {
        let image = image.monic();
        let mut factors = Vec::new();
        for (part, m) in squarefree_decompose(&image)? {
            for g in factor_univariate(&part, rng)? {
                factors.push((g, m));
            }
        }
        factors.sort_by(|a, b| uni_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
        Ok(SeedFactorization { image, factors })
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, m)| m == 1)
    }

    pub fn field(&self) -> PrimeField {
        self.image.field()
    }
}
