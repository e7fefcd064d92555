//! Lifting a coprime factorization of the univariate image to a
//! factorization of the circuit polynomial.

pub mod newton;
pub mod normalize;

use rand::Rng;

use crate::algebra::UniPoly;
use crate::circuit::Circuit;
use crate::error::{Error, Result};

pub use crate::pit::verify_split;
pub use newton::{assemble_monic, build_q, emit_q, q_size_bound, run_lift, LiftState, LiftStats, QSystem};
pub use normalize::{
    normalization_at, normalize, probe_total_degree, restrict_to_curve, scale_output, NormalizeOptions,
    Normalization,
};

/// Number of evaluation points used to accept a split.
pub const SPLIT_TRIALS: usize = 20;

#[derive(Clone, Debug)]
pub struct FactorPair {
    pub g: Circuit,
    pub h: Circuit,
    pub d1: usize,
    pub d2: usize,
    pub stats: LiftStats,
}

/// Lifts `gseed * hseed = fhat(0, y)` to monic factors of `fhat`, both with
/// coefficients truncated to total degree `precision`. Not verified.
pub fn lift_normalized<R: Rng + ?Sized>(
    fhat: &Circuit,
    yvar: usize,
    gseed: &UniPoly,
    hseed: &UniPoly,
    precision: usize,
    rng: &mut R,
) -> Result<FactorPair> {
    let (qs, st) = run_lift(fhat, yvar, gseed, hseed, precision, rng)?;
    let (d1, d2) = (qs.d1, qs.d2);
    let coeffs = st.truncated(&(0..d1 + d2).collect::<Vec<_>>(), precision)?;
    let g = assemble_monic(&coeffs.select(&(0..d1).collect::<Vec<_>>()), yvar)?;
    let h = assemble_monic(&coeffs.select(&(d1..d1 + d2).collect::<Vec<_>>()), yvar)?;
    let stats = LiftStats {
        steps: st.k - 1,
        size_log: st.size_log.clone(),
        q_size: qs.q_circuit()?.size(),
    };
    Ok(FactorPair { g, h, d1, d2, stats })
}

/// Lifts and verifies a split of a normalized `fhat`, whose total degree
/// equals its degree in `yvar`.
pub fn lift_split_normalized<R: Rng + ?Sized>(
    fhat: &Circuit,
    yvar: usize,
    gseed: &UniPoly,
    hseed: &UniPoly,
    rng: &mut R,
) -> Result<FactorPair> {
    let d = (gseed.degree() + hseed.degree()).max(0) as usize;
    let pair = lift_normalized(fhat, yvar, gseed, hseed, d, rng)?;
    if !verify_split(fhat, &pair.g, &pair.h, SPLIT_TRIALS, rng)? {
        return Err(Error::NotATrueSplit(format!(
            "lifted seeds of degrees {} and {} do not multiply back",
            pair.d1, pair.d2
        )));
    }
    Ok(pair)
}

/// Factors `f = g * h` in the original coordinates, given the seed split of
/// the image under `norm`. `g` carries the leading scale.
pub fn lift_coprime_split<R: Rng + ?Sized>(
    f: &Circuit,
    seedg: &UniPoly,
    seedh: &UniPoly,
    norm: &Normalization,
    rng: &mut R,
) -> Result<FactorPair> {
    let fhat = norm.apply(f)?;
    let pair = lift_normalized(&fhat, norm.yvar, seedg, seedh, norm.degree, rng)?;
    let g = scale_output(&norm.denormalize(&pair.g)?, norm.lead_scale)?;
    let h = norm.denormalize(&pair.h)?;
    if !verify_split(f, &g, &h, SPLIT_TRIALS, rng)? {
        return Err(Error::NotATrueSplit(format!(
            "lifted seeds of degrees {} and {} do not multiply back",
            pair.d1, pair.d2
        )));
    }
    Ok(FactorPair { g, h, ..pair })
}
