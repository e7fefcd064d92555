//! Planted-instance generators and dense-oracle helpers shared by the
//! integration tests.
#![allow(dead_code)]

use factorforge::algebra::{uni_gcd, DensePoly, FieldElement, PrimeField, UniPoly};
use factorforge::circuit::{from_dense, Circuit, CircuitBuilder};
use factorforge::seed::is_irreducible;
use rand::Rng;

pub fn fl() -> PrimeField {
    PrimeField::mersenne61()
}

/// All exponent vectors over `vars` (a subset of `0..n`) with total degree
/// at most `deg`.
pub fn monomials(n: usize, vars: &[usize], deg: usize) -> Vec<Vec<u16>> {
    let mut out = vec![vec![0u16; n]];
    for &v in vars {
        let mut next = Vec::new();
        for e in &out {
            let used: usize = e.iter().map(|&x| x as usize).sum();
            for k in 0..=deg - used {
                let mut e2 = e.clone();
                e2[v] = k as u16;
                next.push(e2);
            }
        }
        out = next;
    }
    out
}

/// Random polynomial in `vars` of total degree at most `deg`, every
/// admissible monomial present with a uniform coefficient.
pub fn random_dense<R: Rng>(rng: &mut R, n: usize, vars: &[usize], deg: usize) -> DensePoly {
    let f = fl();
    let terms = monomials(n, vars, deg)
        .into_iter()
        .map(|e| (e, f.random(rng)))
        .collect::<Vec<_>>();
    DensePoly::from_terms(f, n, terms)
}

/// `y^d + sum_{i<d} c_i(x) y^i` with `deg c_i <= d - i`; `y` is the last variable.
pub fn planted_monic<R: Rng>(rng: &mut R, n: usize, d: usize) -> DensePoly {
    let f = fl();
    let y = n - 1;
    let xs: Vec<usize> = (0..y).collect();
    let mut acc = DensePoly::var(f, n, y).pow(d as u32);
    let yv = DensePoly::var(f, n, y);
    for i in 0..d {
        let c = random_dense(rng, n, &xs, d - i);
        acc = &acc + &(&c * &yv.pow(i as u32));
    }
    acc
}

/// Univariate restriction `y -> p(point with point[yvar] = y)`.
pub fn specialize(p: &DensePoly, yvar: usize, point: &[FieldElement]) -> UniPoly {
    let f = p.field();
    let coeffs = p
        .coeffs_in(yvar)
        .iter()
        .map(|c| c.eval(point).unwrap())
        .collect::<Vec<_>>();
    if coeffs.is_empty() {
        return UniPoly::zero(f);
    }
    UniPoly::new(f, coeffs)
}

pub fn origin_image(p: &DensePoly, yvar: usize) -> UniPoly {
    specialize(p, yvar, &vec![fl().zero(); p.nvars()])
}

/// Oracle verdict on a common factor of positive degree in `yvar`: the gcd
/// of the specializations at five random points, by majority.
pub fn shares_factor<R: Rng>(g: &DensePoly, h: &DensePoly, yvar: usize, rng: &mut R) -> bool {
    let votes = (0..5)
        .filter(|_| {
            let pt: Vec<FieldElement> = (0..g.nvars()).map(|_| fl().random(rng)).collect();
            let (a, b) = (specialize(g, yvar, &pt), specialize(h, yvar, &pt));
            uni_gcd(&a, &b).unwrap().degree() >= 1
        })
        .count();
    votes >= 3
}

/// Sufficient condition for irreducibility: constant leading coefficient in
/// `y` at full total degree and an irreducible specialization.
pub fn certified_irreducible<R: Rng>(p: &DensePoly, yvar: usize, rng: &mut R) -> bool {
    let d = p.degree();
    if d < 1 || p.degree_in(yvar) != d {
        return false;
    }
    let lead = &p.coeffs_in(yvar)[d as usize];
    if !lead.is_constant() {
        return false;
    }
    if d == 1 {
        return true;
    }
    (0..20).any(|_| {
        let pt: Vec<FieldElement> = (0..p.nvars()).map(|_| fl().random(rng)).collect();
        is_irreducible(&specialize(p, yvar, &pt).monic()).unwrap()
    })
}

/// `scale * prod parts_i^m_i` as one circuit.
pub fn product_circuit(parts: &[(&Circuit, u32)], scale: FieldElement) -> Circuit {
    let n = parts[0].0.nvars();
    let mut b = CircuitBuilder::new(scale.field(), n);
    let ins: Vec<_> = (0..n).map(|i| b.input(i)).collect();
    let mut acc = b.constant(scale);
    for (p, m) in parts {
        let o = b.import(p, &ins).unwrap()[0];
        let pw = b.pow(o, *m as u64);
        acc = b.mul(acc, pw);
    }
    b.finish(vec![acc])
}

pub fn circuit_of(p: &DensePoly) -> Circuit {
    from_dense(p)
}
