//! Randomized identity tests by evaluation at uniform points.

use rand::Rng;

use crate::algebra::{FieldElement, PrimeField};
use crate::circuit::Circuit;
use crate::error::{Error, Result};

pub fn random_point<R: Rng + ?Sized>(field: PrimeField, n: usize, rng: &mut R) -> Vec<FieldElement> {
    (0..n).map(|_| field.random(rng)).collect()
}

fn single(c: &Circuit, pt: &[FieldElement]) -> Result<FieldElement> {
    if c.num_outputs() != 1 {
        return Err(Error::Structural(format!(
            "expected a single-output circuit, found {} outputs",
            c.num_outputs()
        )));
    }
    Ok(c.eval(pt)?[0])
}

fn same_shape(cs: &[&Circuit]) -> Result<()> {
    let first = cs[0];
    for c in cs {
        if c.nvars() != first.nvars() || c.field() != first.field() {
            return Err(Error::Structural("circuits live in different rings".into()));
        }
    }
    Ok(())
}

/// `f = g * h` at `trials` independent points. Each trial wrongly accepts a
/// false identity with probability at most `deg / p`.
pub fn verify_split<R: Rng + ?Sized>(
    f: &Circuit,
    g: &Circuit,
    h: &Circuit,
    trials: usize,
    rng: &mut R,
) -> Result<bool> {
    same_shape(&[f, g, h])?;
    for _ in 0..trials.max(1) {
        let pt = random_point(f.field(), f.nvars(), rng);
        if single(f, &pt)? != single(g, &pt)? * single(h, &pt)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `f = scale * prod g_i^{m_i}` at `trials` independent points.
pub fn verify_product<R: Rng + ?Sized>(
    f: &Circuit,
    scale: FieldElement,
    factors: &[(&Circuit, u32)],
    trials: usize,
    rng: &mut R,
) -> Result<bool> {
    let mut all = vec![f];
    all.extend(factors.iter().map(|(c, _)| *c));
    same_shape(&all)?;
    for _ in 0..trials.max(1) {
        let pt = random_point(f.field(), f.nvars(), rng);
        let mut rhs = scale;
        for (g, m) in factors {
            rhs *= single(g, &pt)?.pow(*m as u64);
        }
        if single(f, &pt)? != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `a = c * b` for some nonzero constant `c`, tested at `trials` points.
pub fn equal_up_to_scalar<R: Rng + ?Sized>(
    a: &Circuit,
    b: &Circuit,
    trials: usize,
    rng: &mut R,
) -> Result<bool> {
    same_shape(&[a, b])?;
    let mut ratio: Option<FieldElement> = None;
    for _ in 0..trials.max(1) {
        let pt = random_point(a.field(), a.nvars(), rng);
        let (va, vb) = (single(a, &pt)?, single(b, &pt)?);
        if va.is_zero() != vb.is_zero() {
            return Ok(false);
        }
        if vb.is_zero() {
            continue;
        }
        let r = va / vb;
        match ratio {
            None => ratio = Some(r),
            Some(q) if q != r => return Ok(false),
            _ => {}
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CircuitBuilder;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn split_checks() {
        let f = PrimeField::mersenne61();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mk = |k: u64, sq: bool| {
            let mut b = CircuitBuilder::new(f, 2);
            let (x, y) = (b.input(0), b.input(1));
            let kx = b.scale(x, f.elem(k));
            let s = b.add(y, kx);
            let o = if sq { b.mul(s, s) } else { s };
            b.finish(vec![o])
        };
        let (g, h) = (mk(1, false), mk(2, false));
        let mut b = CircuitBuilder::new(f, 2);
        let ins = [b.input(0), b.input(1)];
        let gg = b.import(&g, &ins).unwrap();
        let hh = b.import(&h, &ins).unwrap();
        let prod = b.mul(gg[0], hh[0]);
        let fc = b.finish(vec![prod]);
        assert!(verify_split(&fc, &g, &h, 20, &mut rng).unwrap());
        let h1 = crate::circuit::linear_combination(&h, &[vec![f.one()]], &[f.one()]).unwrap();
        assert!(!verify_split(&fc, &g, &h1, 20, &mut rng).unwrap());
        let one = crate::circuit::Circuit::constant(f.one(), 2);
        assert!(verify_split(&one, &one, &one, 20, &mut rng).unwrap());

        assert!(verify_product(&mk(1, true), f.one(), &[(&g, 2)], 10, &mut rng).unwrap());
        let g3 = crate::circuit::linear_combination(&g, &[vec![f.elem(3)]], &[f.zero()]).unwrap();
        assert!(equal_up_to_scalar(&g3, &g, 10, &mut rng).unwrap());
        assert!(!equal_up_to_scalar(&h, &g, 10, &mut rng).unwrap());
    }
}
