//! Coefficient-matching system and the multivariate Newton iteration.
//!
//! Write `fhat = (y^d1 + sum u_i y^i)(y^d2 + sum w_j y^j)`. Matching the
//! coefficients of `y^0..y^(d-1)` gives `Q_l(u, w) = sum_{i+j=l} u_i w_j - f_l`
//! with `u_d1 = w_d2 = 1`. Each step adds `-A^{-1} Q(approx)` to the current
//! approximation, where `A` is the Jacobian of `Q` at the seed. Because `A`
//! is fixed, every step appends the same shape of circuit.

use rand::Rng;

use crate::algebra::matrix::Matrix;
use crate::algebra::{FieldElement, PrimeField, UniPoly};
use crate::circuit::{homogeneous_components, linear_combination, y_coefficients, Circuit, CircuitBuilder, GateId};
use crate::error::{Error, Result};
use crate::resultant::jacobian_at_seed;

/// `Q_0..Q_{d-1}` for a fixed `fhat`.
#[derive(Clone, Debug)]
pub struct QSystem {
    pub d1: usize,
    pub d2: usize,
    pub yvar: usize,
    /// Outputs `f_0..f_{d-1}`; never reads `yvar`.
    pub fcoeffs: Circuit,
}

impl QSystem {
    pub fn d(&self) -> usize {
        self.d1 + self.d2
    }

    pub fn field(&self) -> PrimeField {
        self.fcoeffs.field()
    }

    pub fn nvars(&self) -> usize {
        self.fcoeffs.nvars()
    }

    /// Standalone circuit for `Q` over `nvars + d` variables: the original
    /// ones, then `u_0..u_{d1-1}`, then `w_0..w_{d2-1}`.
    pub fn q_circuit(&self) -> Result<Circuit> {
        let n = self.nvars();
        let mut b = CircuitBuilder::raw(self.field(), n + self.d());
        let xs: Vec<GateId> = (0..n).map(|i| b.input(i)).collect();
        let neg_f = import_neg_f(&mut b, &self.fcoeffs, &xs)?;
        let u: Vec<GateId> = (0..self.d1).map(|i| b.input(n + i)).collect();
        let w: Vec<GateId> = (0..self.d2).map(|j| b.input(n + self.d1 + j)).collect();
        let q = emit_q(&mut b, &u, &w, &neg_f);
        Ok(b.finish(q).prune())
    }
}

/// Size bound asserted for [`QSystem::q_circuit`]: `(d+1)s + 8(d+1)^2`.
pub fn q_size_bound(input_size: usize, d: usize) -> usize {
    (d + 1) * input_size + 8 * (d + 1) * (d + 1)
}

fn import_neg_f(b: &mut CircuitBuilder, fcoeffs: &Circuit, xs: &[GateId]) -> Result<Vec<GateId>> {
    let field = b.field();
    let f = b.import(fcoeffs, xs)?;
    Ok(f.into_iter().map(|g| b.scale(g, -field.one())).collect())
}

/// Appends `Q_l = sum_{i+j=l} u_i w_j + neg_f[l]` for `l < d`.
pub fn emit_q(b: &mut CircuitBuilder, u: &[GateId], w: &[GateId], neg_f: &[GateId]) -> Vec<GateId> {
    let (d1, d2) = (u.len(), w.len());
    (0..d1 + d2)
        .map(|l| {
            let mut parts = Vec::new();
            for i in l.saturating_sub(d2)..=l.min(d1) {
                let j = l - i;
                let t = match (i == d1, j == d2) {
                    (true, _) => w[j],
                    (_, true) => u[i],
                    _ => b.mul(u[i], w[j]),
                };
                parts.push(t);
            }
            parts.push(neg_f[l]);
            b.sum(&parts)
        })
        .collect()
}

/// Builds the coefficient system; `fhat` must be monic of degree `d1 + d2`
/// in `yvar`.
pub fn build_q<R: Rng + ?Sized>(
    fhat: &Circuit,
    yvar: usize,
    d1: usize,
    d2: usize,
    rng: &mut R,
) -> Result<QSystem> {
    if fhat.num_outputs() != 1 {
        return Err(Error::Structural("coefficient system needs a single output".into()));
    }
    if d1 == 0 || d2 == 0 {
        return Err(Error::Structural("both factors need positive degree".into()));
    }
    let d = d1 + d2;
    let all = y_coefficients(fhat, yvar, d)?;
    // Spot check that fhat really is sum_{i<=d} f_i y^i with f_d = 1.
    let field = fhat.field();
    let pt = crate::pit::random_point(field, fhat.nvars(), rng);
    let coeffs = all.eval(&pt)?;
    let t = pt[yvar];
    let via_coeffs = coeffs.iter().rev().fold(field.zero(), |acc, &c| acc * t + c);
    if !coeffs[d].is_one() || via_coeffs != fhat.eval(&pt)?[0] {
        return Err(Error::Structural(format!(
            "polynomial is not monic of degree {d} in variable {yvar}"
        )));
    }
    let fcoeffs = all.select(&(0..d).collect::<Vec<_>>());
    Ok(QSystem { d1, d2, yvar, fcoeffs })
}

/// The growing Newton circuit. All steps share one builder, so the inputs'
/// coefficient circuits are built once and every step appends a copy of
/// the product part of `Q` and a `d x d` linear layer.
#[derive(Clone, Debug)]
pub struct LiftState {
    builder: CircuitBuilder,
    d1: usize,
    d2: usize,
    neg_f: Vec<GateId>,
    approx: Vec<GateId>,
    /// `-A^{-1}`.
    step_matrix: Matrix,
    /// Approximations are correct modulo `<x>^k`.
    pub k: usize,
    /// Builder size after each step, starting with the initial state.
    pub size_log: Vec<usize>,
    history: Vec<Vec<GateId>>,
}

impl LiftState {
    pub fn new(qs: &QSystem, gseed: &UniPoly, hseed: &UniPoly) -> Result<LiftState> {
        if gseed.degree() != qs.d1 as i64 || hseed.degree() != qs.d2 as i64 {
            return Err(Error::Structural(format!(
                "seed degrees ({}, {}) do not match ({}, {})",
                gseed.degree(),
                hseed.degree(),
                qs.d1,
                qs.d2
            )));
        }
        let field = qs.field();
        let a = jacobian_at_seed(gseed, hseed)?;
        let ainv = a
            .inverse(field)
            .ok_or_else(|| Error::Internal("Jacobian at the seed is singular".into()))?;
        let step_matrix: Matrix = ainv.iter().map(|r| r.iter().map(|&v| -v).collect()).collect();
        let mut builder = CircuitBuilder::raw(field, qs.nvars());
        let xs: Vec<GateId> = (0..qs.nvars()).map(|i| builder.input(i)).collect();
        let neg_f = import_neg_f(&mut builder, &qs.fcoeffs, &xs)?;
        let approx: Vec<GateId> = (0..qs.d1)
            .map(|i| gseed.coeff(i))
            .chain((0..qs.d2).map(|j| hseed.coeff(j)))
            .map(|c| builder.constant(c))
            .collect();
        let size = builder.size();
        Ok(LiftState {
            builder,
            d1: qs.d1,
            d2: qs.d2,
            neg_f,
            history: vec![approx.clone()],
            approx,
            step_matrix,
            k: 1,
            size_log: vec![size],
        })
    }

    pub fn d(&self) -> usize {
        self.d1 + self.d2
    }

    pub fn newton_step(&mut self) {
        let b = &mut self.builder;
        let (u, w) = self.approx.split_at(self.d1);
        let q = emit_q(b, u, w, &self.neg_f);
        let zero = b.field().zero();
        let next: Vec<GateId> = self
            .approx
            .iter()
            .zip(&self.step_matrix)
            .map(|(&a, row)| {
                let mut terms = vec![(a, b.field().one())];
                terms.extend(q.iter().copied().zip(row.iter().copied()));
                b.linear_form(&terms, zero)
            })
            .collect();
        self.approx = next;
        self.k += 1;
        self.history.push(self.approx.clone());
        self.size_log.push(self.builder.size());
    }

    /// Per-step growth of the circuit.
    pub fn growth(&self) -> Vec<usize> {
        self.size_log.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Outputs `u_0..u_{d1-1}, w_0..w_{d2-1}` at the current precision.
    pub fn approx_circuit(&self) -> Circuit {
        self.builder.clone().finish(self.approx.clone()).prune()
    }

    /// Every recorded approximation, step-major: the block for precision
    /// `k` starts at output `(k - 1) * d`.
    pub fn history_circuit(&self) -> Circuit {
        let outs = self.history.iter().flatten().copied().collect();
        self.builder.clone().finish(outs).prune()
    }

    /// Outputs `which` of the approximation truncated to total degree
    /// `precision`.
    pub fn truncated(&self, which: &[usize], precision: usize) -> Result<Circuit> {
        let sel = self.approx_circuit().select(which);
        let comps = homogeneous_components(&sel, precision);
        let field = comps.field();
        let blocks = precision + 1;
        let m: Vec<Vec<FieldElement>> = (0..which.len())
            .map(|r| {
                (0..which.len() * blocks)
                    .map(|c| if c / blocks == r { field.one() } else { field.zero() })
                    .collect()
            })
            .collect();
        let offsets = vec![field.zero(); which.len()];
        Ok(linear_combination(&comps, &m, &offsets)?.prune())
    }
}

/// `y^m + sum_{i<m} c_i y^i` where `c_i` are the outputs of `coeffs`.
pub fn assemble_monic(coeffs: &Circuit, yvar: usize) -> Result<Circuit> {
    let mut b = CircuitBuilder::new(coeffs.field(), coeffs.nvars());
    let inputs: Vec<GateId> = (0..coeffs.nvars()).map(|i| b.input(i)).collect();
    let c = b.import(coeffs, &inputs)?;
    let y = inputs[yvar];
    let mut acc = b.one();
    for &ci in c.iter().rev() {
        acc = b.mul(acc, y);
        acc = b.add(acc, ci);
    }
    Ok(b.finish(vec![acc]).prune())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LiftStats {
    pub steps: usize,
    pub size_log: Vec<usize>,
    pub q_size: usize,
}

/// Lifts a monic `fhat` with seed split `gseed * hseed = fhat(0, y)` until
/// the approximations are exact modulo `<x>^(precision+1)`, then returns
/// the state.
pub fn run_lift<R: Rng + ?Sized>(
    fhat: &Circuit,
    yvar: usize,
    gseed: &UniPoly,
    hseed: &UniPoly,
    precision: usize,
    rng: &mut R,
) -> Result<(QSystem, LiftState)> {
    let qs = build_q(fhat, yvar, gseed.degree().max(0) as usize, hseed.degree().max(0) as usize, rng)?;
    let mut st = LiftState::new(&qs, gseed, hseed)?;
    while st.k <= precision {
        st.newton_step();
    }
    Ok((qs, st))
}
