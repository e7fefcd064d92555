//! Expansion of circuits into dense polynomials.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Circuit, CircuitBuilder, Gate};
use crate::algebra::DensePoly;
use crate::error::{Error, Result};

/// Index of the last gate that reads each gate (or itself if it is an output).
fn last_uses(c: &Circuit) -> Vec<usize> {
    let mut last: Vec<usize> = (0..c.gates().len()).collect();
    for (id, g) in c.gates().iter().enumerate() {
        if let Gate::Add(a, b) | Gate::Mul(a, b) = *g {
            last[a] = id;
            last[b] = id;
        }
    }
    for &o in c.outputs() {
        last[o] = usize::MAX;
    }
    last
}

/// Gate-by-gate expansion with a custom product; intermediate values are
/// dropped after their last use.
fn expand_with(
    c: &Circuit,
    mul: impl Fn(&DensePoly, &DensePoly) -> DensePoly,
) -> Vec<DensePoly> {
    let c = c.prune();
    let field = c.field();
    let n = c.nvars();
    let last = last_uses(&c);
    let mut vals: Vec<Option<DensePoly>> = Vec::with_capacity(c.gates().len());
    for (id, g) in c.gates().iter().enumerate() {
        let v = match *g {
            Gate::Input(i) => DensePoly::var(field, n, i),
            Gate::Const(k) => DensePoly::constant(k, n),
            Gate::Add(a, b) => vals[a].as_ref().unwrap() + vals[b].as_ref().unwrap(),
            Gate::Mul(a, b) => {
                let (pa, pb) = (vals[a].as_ref().unwrap(), vals[b].as_ref().unwrap());
                if pa.is_constant() {
                    pb.scale(pa.constant_term())
                } else if pb.is_constant() {
                    pa.scale(pb.constant_term())
                } else {
                    mul(pa, pb)
                }
            }
        };
        vals.push(Some(v));
        if let Gate::Add(a, b) | Gate::Mul(a, b) = *g {
            for x in [a, b] {
                if last[x] == id {
                    vals[x] = None;
                }
            }
        }
    }
    c.outputs()
        .iter()
        .map(|&o| vals[o].clone().expect("output value retained"))
        .collect()
}

/// Exact dense polynomial of every output.
///
/// Products are truncated at total degree `cap`, which is exact as long as
/// each output's true degree is at most `cap`. That is confirmed by comparing
/// against direct evaluation at a few random points; a mismatch is reported
/// as a capacity error.
pub fn expand(c: &Circuit, cap: usize) -> Result<Vec<DensePoly>> {
    let out = expand_with(c, |a, b| a.mul_truncated_total(b, cap));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f_0ac1e);
    for _ in 0..3 {
        let pt: Vec<_> = (0..c.nvars()).map(|_| c.field().random(&mut rng)).collect();
        let direct = c.eval(&pt)?;
        for (p, v) in out.iter().zip(direct) {
            if p.eval(&pt)? != v {
                return Err(Error::Capacity(format!(
                    "an output has total degree above the cap {cap}"
                )));
            }
        }
    }
    Ok(out)
}

/// Every output reduced modulo `<xvars>^k`. Exact by construction; the
/// remaining variables are expanded in full.
pub fn expand_mod_ideal(c: &Circuit, xvars: &[usize], k: usize) -> Vec<DensePoly> {
    expand_with(c, |a, b| a.mul_mod_ideal(b, xvars, k))
        .into_iter()
        .map(|p| p.truncate_mod_ideal(xvars, k))
        .collect()
}

/// A circuit computing `p` as a sum of monomials, each by square-and-multiply.
pub fn from_dense(p: &DensePoly) -> Circuit {
    let mut b = CircuitBuilder::new(p.field(), p.nvars());
    let mut parts = Vec::with_capacity(p.num_terms());
    for (e, &c) in p.terms() {
        let mut m = b.constant(c);
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                let x = b.input(i);
                let xk = b.pow(x, k as u64);
                m = b.mul(m, xk);
            }
        }
        parts.push(m);
    }
    let o = b.sum(&parts);
    b.finish(vec![o])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;
    use crate::circuit::CircuitBuilder;

    #[test]
    fn square_of_sum() {
        let f = PrimeField::mersenne61();
        let mut b = CircuitBuilder::new(f, 2);
        let (x, y) = (b.input(0), b.input(1));
        let s = b.add(x, y);
        let sq = b.mul(s, s);
        let c = b.finish(vec![sq, x]);
        let out = expand(&c, 4).unwrap();
        let want = DensePoly::from_terms(
            f,
            2,
            vec![
                (vec![2, 0], f.one()),
                (vec![1, 1], f.elem(2)),
                (vec![0, 2], f.one()),
            ],
        );
        assert_eq!(out[0], want);
        assert_eq!(out[1], DensePoly::var(f, 2, 0));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let pt = [f.random(&mut rng), f.random(&mut rng)];
            assert_eq!(out[0].eval(&pt).unwrap(), c.eval(&pt).unwrap()[0]);
        }
        assert!(matches!(expand(&c, 1), Err(Error::Capacity(_))));
        assert_eq!(expand(&from_dense(&out[0]), 4).unwrap()[0], out[0]);
        let zero = DensePoly::zero(f, 2);
        assert_eq!(expand(&from_dense(&zero), 1).unwrap()[0], zero);
        let t = expand_mod_ideal(&c, &[0], 1);
        assert_eq!(t[0], DensePoly::var(f, 2, 1).pow(2));
        assert!(t[1].is_zero());
    }

    #[test]
    fn zero_output() {
        let f = PrimeField::mersenne61();
        let mut b = CircuitBuilder::new(f, 1);
        let z = b.zero();
        let c = b.finish(vec![z]);
        assert!(expand(&c, 3).unwrap()[0].is_zero());
    }

    #[test]
    fn random_circuits_expand_consistently() {
        use rand::Rng;
        let f = PrimeField::mersenne61();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let n = rng.gen_range(1..=4);
            let gates = rng.gen_range(n + 1..=40);
            let c = crate::circuit::random_circuit(f, &mut rng, n, gates, Some(12));
            let p = expand(&c, 12).unwrap().remove(0);
            for _ in 0..20 {
                let pt: Vec<_> = (0..n).map(|_| f.random(&mut rng)).collect();
                assert_eq!(p.eval(&pt).unwrap(), c.eval(&pt).unwrap()[0]);
            }
        }
    }
}
