//! Random change of coordinates making `f` monic in the distinguished
//! variable with a well-behaved image at the origin.

use rand::Rng;

use crate::algebra::{FieldElement, PrimeField, UniPoly};
use crate::circuit::{linear_combination, substitute_affine, AffineExpr, Circuit};
use crate::error::{Error, Result};
use crate::seed::SeedFactorization;

/// `x_i -> x_i + a_i * y + b_i` for every `i != yvar`, followed by division
/// by `lead_scale`. The normalized polynomial is
/// `fhat(x, y) = f(x + a*y + b, y) / lead_scale`, monic of degree `degree` in `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub yvar: usize,
    pub shift: Vec<FieldElement>,
    pub translation: Vec<FieldElement>,
    pub lead_scale: FieldElement,
    /// Total degree of `f`, equal to the degree of `fhat` in `y`.
    pub degree: usize,
}

impl Normalization {
    pub fn nvars(&self) -> usize {
        self.shift.len()
    }

    pub fn field(&self) -> PrimeField {
        self.lead_scale.field()
    }

    pub fn forward_map(&self) -> Vec<AffineExpr> {
        self.map(false)
    }

    pub fn inverse_map(&self) -> Vec<AffineExpr> {
        self.map(true)
    }

    fn map(&self, inverse: bool) -> Vec<AffineExpr> {
        let field = self.field();
        (0..self.nvars())
            .map(|i| {
                if i == self.yvar {
                    return AffineExpr::var(i, field);
                }
                let (a, b) = if inverse {
                    (-self.shift[i], -self.translation[i])
                } else {
                    (self.shift[i], self.translation[i])
                };
                let mut terms = vec![(i, field.one())];
                if !a.is_zero() {
                    terms.push((self.yvar, a));
                }
                AffineExpr::new(terms, b)
            })
            .collect()
    }

    /// The normalized circuit `fhat`.
    pub fn apply(&self, f: &Circuit) -> Result<Circuit> {
        let moved = substitute_affine(f, &self.forward_map(), self.nvars())?;
        let inv = self
            .lead_scale
            .inv()
            .ok_or_else(|| Error::Internal("zero leading scale".into()))?;
        scale_output(&moved, inv)
    }

    /// Maps a circuit in normalized coordinates back to the original ones.
    /// Leading scales are not touched.
    pub fn denormalize(&self, c: &Circuit) -> Result<Circuit> {
        substitute_affine(c, &self.inverse_map(), self.nvars())
    }

    /// The point of the original space corresponding to `x = 0`, `y = t`.
    pub fn line_point(&self, t: FieldElement) -> Vec<FieldElement> {
        (0..self.nvars())
            .map(|i| {
                if i == self.yvar {
                    t
                } else {
                    self.translation[i] + self.shift[i] * t
                }
            })
            .collect()
    }
}

/// Multiplies the single output by a constant.
pub fn scale_output(c: &Circuit, k: FieldElement) -> Result<Circuit> {
    if k.is_one() {
        return Ok(c.clone());
    }
    linear_combination(c, &[vec![k]], &[k.field().zero()])
}

/// `t -> f(point(t))` as a univariate of degree at most `deg`, by interpolation.
pub fn restrict_to_curve(
    f: &Circuit,
    deg: usize,
    point: impl Fn(FieldElement) -> Vec<FieldElement>,
) -> Result<UniPoly> {
    let field = f.field();
    let ts: Vec<FieldElement> = (0..=deg as u64).map(|t| field.elem(t)).collect();
    let vals: Vec<FieldElement> = ts
        .iter()
        .map(|&t| Ok(f.eval(&point(t))?[0]))
        .collect::<Result<_>>()?;
    UniPoly::interpolate(&ts, &vals)
}

/// Total degree of a single-output circuit, read off along a random line.
/// Degrees above `cap` are reported as a capacity error.
pub fn probe_total_degree<R: Rng + ?Sized>(f: &Circuit, cap: usize, rng: &mut R) -> Result<usize> {
    let field = f.field();
    let n = f.nvars();
    let base: Vec<FieldElement> = (0..n).map(|_| field.random(rng)).collect();
    let dir: Vec<FieldElement> = (0..n).map(|_| field.random(rng)).collect();
    let u = restrict_to_curve(f, cap + 1, |t| {
        base.iter().zip(&dir).map(|(&b, &v)| b + v * t).collect()
    })?;
    if u.degree() > cap as i64 {
        return Err(Error::Capacity(format!(
            "total degree exceeds the cap {cap}"
        )));
    }
    Ok(u.degree().max(0) as usize)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormalizeOptions {
    /// Reject images with repeated factors.
    pub squarefree: bool,
    /// Try `a = 0`, `b = 0` before drawing random coordinates.
    pub origin_first: bool,
    pub attempts: usize,
    pub degree_cap: usize,
}

impl Default for NormalizeOptions {
    fn default() -> Self {
        NormalizeOptions {
            squarefree: false,
            origin_first: true,
            attempts: 64,
            degree_cap: crate::algebra::DEGREE_CAP,
        }
    }
}

/// Normalization with the given shift and translation, if it makes `f`
/// monic of full degree in `yvar` with a nonzero constant term at the origin.
pub fn normalization_at(
    f: &Circuit,
    yvar: usize,
    degree: usize,
    shift: Vec<FieldElement>,
    translation: Vec<FieldElement>,
) -> Result<Option<(Normalization, UniPoly)>> {
    let field = f.field();
    let mut norm = Normalization {
        yvar,
        shift,
        translation,
        lead_scale: field.one(),
        degree,
    };
    let image = restrict_to_curve(f, degree, |t| norm.line_point(t))?;
    let lc = image.coeff(degree);
    if lc.is_zero() {
        return Ok(None);
    }
    let image = image.monic();
    if image.coeff(0).is_zero() {
        return Ok(None);
    }
    norm.lead_scale = lc;
    Ok(Some((norm, image)))
}

/// Draws coordinates until `f` is monic in `yvar` with an admissible image.
/// Returns the normalization, the circuit `fhat` and the factored image
/// `fhat(0, y)`.
pub fn normalize<R: Rng + ?Sized>(
    f: &Circuit,
    yvar: usize,
    opts: NormalizeOptions,
    rng: &mut R,
) -> Result<(Normalization, Circuit, SeedFactorization)> {
    if f.num_outputs() != 1 {
        return Err(Error::Structural("normalize expects a single-output circuit".into()));
    }
    let n = f.nvars();
    if yvar >= n {
        return Err(Error::Structural(format!("variable {yvar} out of range")));
    }
    let field = f.field();
    let degree = probe_total_degree(f, opts.degree_cap, rng)?;
    if degree == 0 {
        return Err(Error::Domain("cannot normalize a constant polynomial".into()));
    }
    field.check_degree(degree)?;
    let mut last_reason = String::from("no attempt made");
    for attempt in 0..opts.attempts {
        let (shift, translation) = if attempt == 0 && opts.origin_first {
            (vec![field.zero(); n], vec![field.zero(); n])
        } else {
            let mut draw = || -> Vec<FieldElement> {
                (0..n)
                    .map(|i| if i == yvar { field.zero() } else { field.random(rng) })
                    .collect()
            };
            let a = draw();
            let b = draw();
            (a, b)
        };
        let Some((norm, image)) = normalization_at(f, yvar, degree, shift, translation)? else {
            last_reason = "leading coefficient or constant term vanished".into();
            continue;
        };
        let seed = match SeedFactorization::new(&image, rng) {
            Ok(s) => s,
            Err(e) => {
                last_reason = e.to_string();
                continue;
            }
        };
        if opts.squarefree && !seed.is_squarefree() {
            last_reason = "image is not squarefree".into();
            continue;
        }
        let fhat = norm.apply(f)?;
        return Ok((norm, fhat, seed));
    }
    Err(Error::NormalizationFailure {
        attempts: opts.attempts,
        reason: last_reason,
    })
}
