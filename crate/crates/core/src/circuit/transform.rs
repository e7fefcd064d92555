//! Circuit-to-circuit passes: affine substitution, homogenization,
//! coefficient extraction in one variable, and linear output layers.

use std::collections::BTreeMap;

use super::{Circuit, CircuitBuilder, Gate, GateId};
use crate::algebra::{FieldElement, UniPoly};
use crate::error::{Error, Result};

/// `constant + sum_i coeff_i * x_{var_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineExpr {
    pub terms: Vec<(usize, FieldElement)>,
    pub constant: FieldElement,
}

impl AffineExpr {
    pub fn new(terms: Vec<(usize, FieldElement)>, constant: FieldElement) -> Self {
        AffineExpr { terms, constant }
    }

    /// `x_i` itself.
    pub fn var(i: usize, field: crate::algebra::PrimeField) -> Self {
        AffineExpr::new(vec![(i, field.one())], field.zero())
    }

    pub fn constant(c: FieldElement) -> Self {
        AffineExpr::new(vec![], c)
    }

    /// `x_i + c`.
    pub fn shifted(i: usize, c: FieldElement) -> Self {
        AffineExpr::new(vec![(i, c.field().one())], c)
    }

    pub fn is_var(&self, i: usize) -> bool {
        self.constant.is_zero() && self.terms.len() == 1 && self.terms[0] == (i, self.constant.field().one())
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        self.terms
            .iter()
            .fold(self.constant, |acc, &(v, a)| acc + a * point[v])
    }
}

impl CircuitBuilder {
    /// `offset + sum c_i * g_i`, merging repeated gates and skipping zero
    /// coefficients.
    pub fn linear_form(&mut self, terms: &[(GateId, FieldElement)], offset: FieldElement) -> GateId {
        let mut merged: BTreeMap<GateId, FieldElement> = BTreeMap::new();
        for &(g, c) in terms {
            let e = merged.entry(g).or_insert(self.field().zero());
            *e += c;
        }
        let mut parts: Vec<GateId> = Vec::new();
        for (g, c) in merged {
            if !c.is_zero() {
                parts.push(self.scale(g, c));
            }
        }
        if !offset.is_zero() || parts.is_empty() {
            parts.push(self.constant(offset));
        }
        self.sum(&parts)
    }

    fn affine(&mut self, e: &AffineExpr) -> GateId {
        let terms: Vec<(GateId, FieldElement)> =
            e.terms.iter().map(|&(v, a)| (self.input(v), a)).collect();
        self.linear_form(&terms, e.constant)
    }
}

/// Composes `c` with the affine map `x_i -> map[i]`; the result lives in
/// `nvars_out` variables.
pub fn substitute_affine(c: &Circuit, map: &[AffineExpr], nvars_out: usize) -> Result<Circuit> {
    if map.len() != c.nvars() {
        return Err(Error::Structural(format!(
            "substitution has {} entries for {} variables",
            map.len(),
            c.nvars()
        )));
    }
    if let Some((v, _)) = map.iter().flat_map(|e| e.terms.iter()).find(|(v, _)| *v >= nvars_out) {
        return Err(Error::Structural(format!(
            "substitution reads variable {v} outside {nvars_out} variables"
        )));
    }
    let mut b = CircuitBuilder::new(c.field(), nvars_out);
    let inputs: Vec<GateId> = map.iter().map(|e| b.affine(e)).collect();
    let outs = b.import(c, &inputs)?;
    Ok(b.finish(outs))
}

/// For each output, its homogeneous components of degrees `0..=k`, in
/// output-major order.
///
/// Each gate is replaced by up to `k + 1` gates, one per degree. Components
/// that are structurally zero are never materialized.
pub fn homogeneous_components(c: &Circuit, k: usize) -> Circuit {
    let c = c.prune();
    let mut b = CircuitBuilder::new(c.field(), c.nvars());
    let mut comps: Vec<Vec<Option<GateId>>> = Vec::with_capacity(c.gates().len());
    for g in c.gates() {
        let mut h: Vec<Option<GateId>> = vec![None; k + 1];
        match *g {
            Gate::Input(i) => {
                if k >= 1 {
                    h[1] = Some(b.input(i));
                }
            }
            Gate::Const(v) => {
                if !v.is_zero() {
                    h[0] = Some(b.constant(v));
                }
            }
            Gate::Add(x, y) => {
                for j in 0..=k {
                    h[j] = match (comps[x][j], comps[y][j]) {
                        (Some(p), Some(q)) => Some(b.add(p, q)),
                        (p, None) => p,
                        (None, q) => q,
                    };
                }
            }
            Gate::Mul(x, y) => {
                for j in 0..=k {
                    let mut acc: Option<GateId> = None;
                    for i in 0..=j {
                        if let (Some(p), Some(q)) = (comps[x][i], comps[y][j - i]) {
                            let m = b.mul(p, q);
                            acc = Some(match acc {
                                None => m,
                                Some(a) => b.add(a, m),
                            });
                        }
                    }
                    h[j] = acc;
                }
            }
        }
        comps.push(h);
    }
    let mut outs = Vec::with_capacity(c.num_outputs() * (k + 1));
    for &o in c.outputs() {
        for j in 0..=k {
            let g = match comps[o][j] {
                Some(g) => g,
                None => b.zero(),
            };
            outs.push(g);
        }
    }
    b.finish(outs).prune()
}

/// For each output `f = sum_i f_i * y^i` (with `y` the variable `yvar` and
/// `deg_y f <= d`), the coefficients `f_0..f_d`, in output-major order.
///
/// The coefficients are recovered by interpolation: `f` is copied `d + 1`
/// times with `y` fixed to `0, 1, ..., d`, and the inverse Vandermonde matrix
/// is applied as a linear layer. The copies never read `y`.
pub fn y_coefficients(c: &Circuit, yvar: usize, d: usize) -> Result<Circuit> {
    if yvar >= c.nvars() {
        return Err(Error::Structural(format!(
            "variable {yvar} out of range for {} variables",
            c.nvars()
        )));
    }
    let field = c.field();
    if (field.modulus() as u128) <= d as u128 {
        return Err(Error::UnsupportedCharacteristic {
            prime: field.modulus(),
            degree: d,
        });
    }
    let xs: Vec<FieldElement> = (0..=d as u64).map(|t| field.elem(t)).collect();
    // lagrange[t] has coefficient i equal to entry (i, t) of the inverse Vandermonde matrix.
    let lagrange: Vec<UniPoly> = (0..=d)
        .map(|t| {
            let ys: Vec<FieldElement> = (0..=d)
                .map(|s| if s == t { field.one() } else { field.zero() })
                .collect();
            UniPoly::interpolate(&xs, &ys)
        })
        .collect::<Result<_>>()?;

    let c = c.prune();
    let mut b = CircuitBuilder::new(field, c.nvars());
    let mut copies: Vec<Vec<GateId>> = Vec::with_capacity(d + 1);
    for &t in &xs {
        let inputs: Vec<GateId> = (0..c.nvars())
            .map(|v| if v == yvar { b.constant(t) } else { b.input(v) })
            .collect();
        copies.push(b.import(&c, &inputs)?);
    }
    let mut outs = Vec::with_capacity(c.num_outputs() * (d + 1));
    for o in 0..c.num_outputs() {
        for i in 0..=d {
            let terms: Vec<(GateId, FieldElement)> = (0..=d)
                .map(|t| (copies[t][o], lagrange[t].coeff(i)))
                .collect();
            outs.push(b.linear_form(&terms, field.zero()));
        }
    }
    Ok(b.finish(outs).prune())
}

/// Appends outputs `M * outputs(c) + offsets`; the original outputs are
/// replaced.
pub fn linear_combination(
    c: &Circuit,
    m: &[Vec<FieldElement>],
    offsets: &[FieldElement],
) -> Result<Circuit> {
    if offsets.len() != m.len() {
        return Err(Error::Structural(format!(
            "{} offsets for {} rows",
            offsets.len(),
            m.len()
        )));
    }
    if let Some(row) = m.iter().find(|r| r.len() != c.num_outputs()) {
        return Err(Error::Structural(format!(
            "row of length {} against {} circuit outputs",
            row.len(),
            c.num_outputs()
        )));
    }
    let mut b = CircuitBuilder::from_circuit(c, true);
    let outs: Vec<GateId> = m
        .iter()
        .zip(offsets)
        .map(|(row, &off)| {
            let terms: Vec<(GateId, FieldElement)> =
                c.outputs().iter().copied().zip(row.iter().copied()).collect();
            b.linear_form(&terms, off)
        })
        .collect();
    Ok(b.finish(outs))
}
