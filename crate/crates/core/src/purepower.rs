//! Roots of pure powers: `f = g^e` is recovered from the coprime split
//! `z^e - f = (z - g)(z^(e-1) + ... + g^(e-1))`.

use rand::Rng;

use crate::algebra::{FieldElement, UniPoly, DEGREE_CAP};
use crate::circuit::{substitute_affine, AffineExpr, Circuit, CircuitBuilder};
use crate::error::{Error, Result};
use crate::lift::{probe_total_degree, run_lift, scale_output, SPLIT_TRIALS};
use crate::pit::verify_product;
use crate::seed::{eth_root, SPLIT_RETRIES};

/// `f` together with `fext = z^e - f`, where `z` is appended as the last
/// variable.
#[derive(Clone, Debug)]
pub struct PowerInstance {
    pub f: Circuit,
    pub e: u64,
    pub fext: Circuit,
}

impl PowerInstance {
    pub fn new(f: &Circuit, e: u64) -> Result<PowerInstance> {
        if e < 2 {
            return Err(Error::Domain(format!("root index must be at least 2, got {e}")));
        }
        if f.num_outputs() != 1 {
            return Err(Error::Structural("root extraction needs a single output".into()));
        }
        let f = f.prune();
        let n = f.nvars();
        let mut b = CircuitBuilder::from_circuit(&f.with_nvars(n + 1)?, true);
        let z = b.input(n);
        let ze = b.pow(z, e);
        let nf = b.neg(f.outputs()[0]);
        let o = b.add(ze, nf);
        let fext = b.finish(vec![o]).prune();
        Ok(PowerInstance { f, e, fext })
    }

    /// The asserted budget `size(f) + 2 ceil(log2 e) + 2`.
    pub fn size_bound(&self) -> usize {
        fext_size_bound(self.f.size(), self.e)
    }

    pub fn within_size_bound(&self) -> bool {
        self.fext.size() <= self.size_bound()
    }
}

pub fn fext_size_bound(size_f: usize, e: u64) -> usize {
    let ceil_log2 = (64 - (e.max(1) - 1).leading_zeros()) as usize;
    size_f + 2 * ceil_log2 + 2
}

/// Tries one translation `b`: lifts the split of `z^e - f(x + b)` seeded by
/// `(z - r, (z^e - c)/(z - r))` with `c = f(b)` and `r^e = c`. Returns `None`
/// when `c` is zero or has no `e`-th root.
pub fn extract_root_at<R: Rng + ?Sized>(
    inst: &PowerInstance,
    translation: &[FieldElement],
    root_degree: usize,
    rng: &mut R,
) -> Result<Option<Circuit>> {
    let f = &inst.f;
    let n = f.nvars();
    let field = f.field();
    let c = f.eval(translation)?[0];
    if c.is_zero() {
        return Ok(None);
    }
    let Some(r) = eth_root(c, inst.e, rng)? else {
        return Ok(None);
    };
    let mut fwd: Vec<AffineExpr> = (0..n).map(|i| AffineExpr::shifted(i, translation[i])).collect();
    fwd.push(AffineExpr::var(n, field));
    let fb = substitute_affine(&inst.fext, &fwd, n + 1)?;
    let gseed = UniPoly::new(field, vec![-r, field.one()]);
    let mut image = vec![field.zero(); inst.e as usize + 1];
    image[0] = -c;
    image[inst.e as usize] = field.one();
    let hseed = UniPoly::new(field, image).div_exact(&gseed)?;
    let (_, st) = run_lift(&fb, n, &gseed, &hseed, root_degree, rng)?;
    // z - g has constant coefficient -g
    let g0 = st.truncated(&[0], root_degree)?;
    let g_b = scale_output(&g0, -field.one())?;
    let back: Vec<AffineExpr> = (0..n)
        .map(|i| AffineExpr::shifted(i, -translation[i]))
        .chain(std::iter::once(AffineExpr::var(n, field)))
        .collect();
    let g = substitute_affine(&g_b, &back, n + 1)?.prune().with_nvars(n)?;
    Ok(Some(g))
}

/// A circuit `g` with `g^e = f`. The caller asserts that `f` is an `e`-th
/// power; the result is checked by identity testing either way.
pub fn extract_root<R: Rng + ?Sized>(f: &Circuit, e: u64, rng: &mut R) -> Result<Circuit> {
    let inst = PowerInstance::new(f, e)?;
    let field = f.field();
    let n = f.nvars();
    let deg = probe_total_degree(&inst.f, DEGREE_CAP, rng)?;
    if deg % e as usize != 0 {
        return Err(Error::NotAPurePower(format!("degree {deg} is not a multiple of {e}")));
    }
    field.check_degree(deg.max(e as usize))?;
    let root_degree = deg / e as usize;
    for attempt in 0..SPLIT_RETRIES {
        let b: Vec<FieldElement> = if attempt == 0 {
            vec![field.zero(); n]
        } else {
            crate::pit::random_point(field, n, rng)
        };
        let g = if root_degree == 0 {
            let c = inst.f.eval(&b)?[0];
            if c.is_zero() {
                return Err(Error::Domain("root of the zero polynomial".into()));
            }
            match eth_root(c, e, rng)? {
                Some(r) => Circuit::constant(r, n),
                None => return Err(Error::NotAPurePower(format!("constant {c} is not an {e}-th power"))),
            }
        } else {
            match extract_root_at(&inst, &b, root_degree, rng)? {
                Some(g) => g,
                None => continue,
            }
        };
        if !verify_product(&inst.f, field.one(), &[(&g, e as u32)], SPLIT_TRIALS, rng)? {
            return Err(Error::NotAPurePower(format!("lifted root does not satisfy g^{e} = f")));
        }
        return Ok(g);
    }
    Err(Error::RetriesExhausted(format!(
        "no translation with an {e}-th power constant term in {SPLIT_RETRIES} attempts"
    )))
}
