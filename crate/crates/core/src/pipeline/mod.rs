//! Full factorization driver.
//!
//! One round: normalize `f`, factor the image `fhat(0, y)`, then repeatedly
//! look for the smallest set of image factors whose product lifts to a true
//! factor of `fhat`. Every factor is lifted from `fhat` itself, never from a
//! previously lifted circuit, so output sizes stay polynomial in the input.
//! Pieces whose image factors all share a multiplicity `e > 1` go through
//! root extraction. A round is accepted when `scale * prod f_i^m_i = f`
//! passes identity testing.

pub mod cli;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{FieldElement, UniPoly};
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::lift::{
    lift_split_normalized, normalize, probe_total_degree, restrict_to_curve, scale_output, FactorPair,
    NormalizeOptions, Normalization,
};
use crate::pit::verify_product;
use crate::purepower::extract_root;
use crate::seed::SeedFactorization;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorConfig {
    /// Distinguished variable; the last one when `None`.
    pub yvar: Option<usize>,
    pub degree_cap: usize,
    pub trials: usize,
    /// Candidate subsets per search; `2^k` capped at 4096 when `None`.
    pub budget: Option<usize>,
    pub rounds: usize,
    pub seed: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            yvar: None,
            degree_cap: 16,
            trials: 20,
            budget: None,
            rounds: 8,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// The univariate image is irreducible.
    IrreducibleImage,
    /// Squarefree image and no proper subset of its factors lifted.
    Recombination,
    Unverified,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certificate::IrreducibleImage => "irreducible-image",
            Certificate::Recombination => "exhaustive-recombination",
            Certificate::Unverified => "unverified-irreducible",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Factor {
    pub circuit: Circuit,
    pub multiplicity: u32,
    pub certificate: Certificate,
    /// A piece that could not be split further or identified as a power.
    pub residual: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorStats {
    pub prime: u64,
    pub rng_seed: u64,
    pub n: usize,
    pub d: usize,
    pub input_size: usize,
    pub retries: usize,
    pub lifts: usize,
    pub candidates: usize,
}

#[derive(Clone, Debug)]
pub struct FactorizationResult {
    pub factors: Vec<Factor>,
    pub scale: FieldElement,
    pub stats: FactorStats,
}

impl FactorizationResult {
    pub fn residuals(&self) -> usize {
        self.factors.iter().filter(|f| f.residual).count()
    }

    /// `key = value` lines with stable keys.
    pub fn stats_text(&self) -> String {
        let s = &self.stats;
        let mut out = format!(
            "prime = {}\nrng_seed = {}\nn = {}\nd = {}\ninput_size = {}\nfactors = {}\n",
            s.prime,
            s.rng_seed,
            s.n,
            s.d,
            s.input_size,
            self.factors.len()
        );
        for (i, f) in self.factors.iter().enumerate() {
            out += &format!("size_{i} = {}\nmult_{i} = {}\n", f.circuit.size(), f.multiplicity);
            out += &format!("cert_{i} = {}\n", f.certificate);
            if f.residual {
                out += &format!("residual_{i} = true\n");
            }
        }
        out += &format!(
            "retries = {}\nlifts = {}\ncandidates = {}\nscale = {}\n",
            s.retries, s.lifts, s.candidates, self.scale
        );
        out
    }
}

/// A verified split found by [`recombination_search`].
#[derive(Clone, Debug)]
pub struct Bipartition {
    /// Indices into the searched pool lifted as `g`.
    pub subset: Vec<usize>,
    pub pair: FactorPair,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub found: Option<Bipartition>,
    pub tried: usize,
    /// Every candidate subset of the pool was tried.
    pub exhaustive: bool,
}

fn seed_product(factors: &[(UniPoly, u32)], which: impl Iterator<Item = usize>) -> UniPoly {
    let field = factors[0].0.field();
    which.fold(UniPoly::one(field), |acc, i| &acc * &factors[i].0.pow(factors[i].1))
}

fn image_degree(factors: &[(UniPoly, u32)], s: &[usize]) -> i64 {
    s.iter().map(|&i| factors[i].0.degree() * factors[i].1 as i64).sum()
}

/// Largest pool whose subsets are enumerated.
pub const MAX_POOL: usize = 20;

/// Subsets `S` of `pool` with `S` and `pool \ S` both nonempty, each
/// bipartition once, ordered by image degree and then lexicographically.
pub fn candidate_subsets(factors: &[(UniPoly, u32)], pool: &[usize]) -> Vec<Vec<usize>> {
    let k = pool.len();
    if !(2..=MAX_POOL).contains(&k) {
        return Vec::new();
    }
    let key = |s: &Vec<usize>| (image_degree(factors, s), s.clone());
    let mut out = Vec::new();
    for mask in 1u32..(1 << k) - 1 {
        let s: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| pool[b]).collect();
        let c: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 0).map(|b| pool[b]).collect();
        if key(&s) < key(&c) {
            out.push(s);
        }
    }
    out.sort_by_key(|s| key(s));
    out
}

/// Tries candidate subsets of `pool` in order, lifting `(prod_S, rest)` from
/// `fhat`, where the rest includes the seed factors outside the pool.
/// Candidates are evaluated in parallel batches; the lowest verified index
/// wins, so the outcome does not depend on scheduling.
pub fn recombination_search(
    fhat: &Circuit,
    yvar: usize,
    factors: &[(UniPoly, u32)],
    pool: &[usize],
    budget: usize,
    seed: u64,
) -> SearchOutcome {
    let cands = candidate_subsets(factors, pool);
    let total = cands.len();
    let limit = total.min(budget);
    let batch = rayon::current_num_threads().max(1) * 2;
    let mut tried = 0;
    for start in (0..limit).step_by(batch) {
        let end = (start + batch).min(limit);
        let hit = (start..end)
            .into_par_iter()
            .map(|idx| {
                let s = &cands[idx];
                let gseed = seed_product(factors, s.iter().copied());
                let hseed = seed_product(factors, (0..factors.len()).filter(|i| !s.contains(i)));
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (idx as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
                lift_split_normalized(fhat, yvar, &gseed, &hseed, &mut rng)
                    .ok()
                    .map(|pair| Bipartition { subset: s.clone(), pair })
            })
            .find_first(|r| r.is_some())
            .flatten();
        tried = end;
        if hit.is_some() {
            return SearchOutcome { found: hit, tried, exhaustive: false };
        }
    }
    SearchOutcome {
        found: None,
        tried,
        exhaustive: limit == total && pool.len() <= MAX_POOL,
    }
}

fn divisors_desc(m: u32) -> Vec<u32> {
    (2..=m).rev().filter(|e| m % e == 0).collect()
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn origin_line(n: usize, yvar: usize, t: FieldElement) -> Vec<FieldElement> {
    let mut v = vec![t.field().zero(); n];
    v[yvar] = t;
    v
}

/// Rescales a circuit so its image along the `y` axis is monic.
fn make_monic(c: &Circuit, yvar: usize, degree: usize) -> Result<Circuit> {
    let n = c.nvars();
    let img = restrict_to_curve(c, degree, |t| origin_line(n, yvar, t))?;
    let lc = img.coeff(degree);
    let inv = lc
        .inv()
        .ok_or_else(|| Error::Internal("root lost its leading coefficient".into()))?;
    scale_output(c, inv)
}

struct Round {
    pieces: Vec<Factor>,
    lifts: usize,
    candidates: usize,
}

/// Splits a normalized `fhat` with the given image factorization into
/// pieces, all in normalized coordinates.
fn factor_normalized<R: Rng + ?Sized>(
    fhat: &Circuit,
    yvar: usize,
    seed: &SeedFactorization,
    budget: Option<usize>,
    rng: &mut R,
) -> Result<Round> {
    let factors = &seed.factors;
    let k = factors.len();
    let mut pool: Vec<usize> = (0..k).collect();
    let mut blocks: Vec<(Circuit, Vec<usize>, bool)> = Vec::new();
    let mut lifts = 0;
    let mut candidates = 0;
    let mut last_exhaustive = true;
    while pool.len() > 1 {
        let b = budget.unwrap_or_else(|| 1usize.checked_shl(pool.len() as u32).unwrap_or(usize::MAX).min(4096));
        let out = recombination_search(fhat, yvar, factors, &pool, b, rng.gen());
        candidates += out.tried;
        lifts += out.tried;
        match out.found {
            Some(bp) => {
                pool.retain(|i| !bp.subset.contains(i));
                blocks.push((bp.pair.g, bp.subset, true));
                if blocks.len() == 1 && pool.len() == 1 {
                    // the cofactor of the first split is already lifted
                    blocks.push((bp.pair.h, pool.clone(), true));
                    pool.clear();
                }
            }
            None => {
                last_exhaustive = out.exhaustive;
                break;
            }
        }
    }
    if !pool.is_empty() {
        if pool.len() == k {
            blocks.push((fhat.clone(), pool, last_exhaustive));
        } else {
            let gseed = seed_product(factors, pool.iter().copied());
            let hseed = seed_product(factors, (0..k).filter(|i| !pool.contains(i)));
            lifts += 1;
            let pair = lift_split_normalized(fhat, yvar, &gseed, &hseed, rng)?;
            blocks.push((pair.g, pool, last_exhaustive));
        }
    }

    let mut pieces = Vec::new();
    for (circuit, s, exhaustive) in blocks {
        let mults: Vec<u32> = s.iter().map(|&i| factors[i].1).collect();
        let e = mults.iter().fold(0, |a, &m| gcd(a, m));
        let squarefree_cert = |mults: &[u32]| {
            if s.len() == 1 && mults[0] == 1 {
                Certificate::IrreducibleImage
            } else if exhaustive && mults.iter().all(|&m| m == 1) {
                Certificate::Recombination
            } else {
                Certificate::Unverified
            }
        };
        if e == 1 {
            let residual = mults.iter().any(|&m| m > 1);
            pieces.push(Factor {
                certificate: if residual { Certificate::Unverified } else { squarefree_cert(&mults) },
                circuit,
                multiplicity: 1,
                residual,
            });
            continue;
        }
        let mut done = false;
        for r in divisors_desc(e) {
            lifts += 1;
            let Ok(root) = extract_root(&circuit, r as u64, rng) else {
                continue;
            };
            let reduced: Vec<u32> = mults.iter().map(|m| m / r).collect();
            let deg = image_degree(factors, &s) as usize / r as usize;
            let root = make_monic(&root, yvar, deg)?;
            let residual = reduced.iter().any(|&m| m > 1);
            pieces.push(Factor {
                certificate: if residual { Certificate::Unverified } else { squarefree_cert(&reduced) },
                circuit: root,
                multiplicity: r,
                residual,
            });
            done = true;
            break;
        }
        if !done {
            pieces.push(Factor {
                circuit,
                multiplicity: 1,
                certificate: Certificate::Unverified,
                residual: true,
            });
        }
    }
    Ok(Round { pieces, lifts, candidates })
}

fn normalize_for_factoring<R: Rng + ?Sized>(
    f: &Circuit,
    yvar: usize,
    cap: usize,
    first_round: bool,
    rng: &mut R,
) -> Result<(Normalization, Circuit, SeedFactorization)> {
    // A squarefree image is preferred; a few failures suggest f has
    // repeated factors, and then any admissible image will do.
    let strict = NormalizeOptions {
        squarefree: true,
        origin_first: first_round,
        attempts: 4,
        degree_cap: cap,
    };
    match normalize(f, yvar, strict, rng) {
        Ok(r) => Ok(r),
        Err(Error::NormalizationFailure { .. }) => normalize(
            f,
            yvar,
            NormalizeOptions {
                squarefree: false,
                origin_first: false,
                attempts: 64,
                degree_cap: cap,
            },
            rng,
        ),
        Err(e) => Err(e),
    }
}

/// Factors `f` into circuits with multiplicities and a scalar.
pub fn factor(f: &Circuit, config: &FactorConfig) -> Result<FactorizationResult> {
    if f.num_outputs() != 1 {
        return Err(Error::Structural("factor expects a single-output circuit".into()));
    }
    let n = f.nvars();
    let field = f.field();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut stats = FactorStats {
        prime: field.modulus(),
        rng_seed: config.seed,
        n,
        input_size: f.size(),
        ..Default::default()
    };
    if n == 0 {
        return constant_result(f, stats);
    }
    let yvar = config.yvar.unwrap_or(n - 1);
    if yvar >= n {
        return Err(Error::Structural(format!("variable {yvar} out of range")));
    }
    let d = probe_total_degree(f, config.degree_cap, &mut rng)?;
    stats.d = d;
    if d == 0 {
        return constant_result(f, stats);
    }
    field.check_degree(d)?;

    let mut best: Option<FactorizationResult> = None;
    for round in 0..config.rounds.max(1) {
        if round > 0 {
            stats.retries += 1;
        }
        let (norm, fhat, seed) = normalize_for_factoring(f, yvar, config.degree_cap, round == 0, &mut rng)?;
        let Ok(r) = factor_normalized(&fhat, yvar, &seed, config.budget, &mut rng) else {
            continue;
        };
        stats.lifts += r.lifts;
        stats.candidates += r.candidates;
        let mut factors = Vec::with_capacity(r.pieces.len());
        for p in r.pieces {
            factors.push(Factor {
                circuit: norm.denormalize(&p.circuit)?.prune(),
                ..p
            });
        }
        let refs: Vec<(&Circuit, u32)> = factors.iter().map(|f| (&f.circuit, f.multiplicity)).collect();
        if !verify_product(f, norm.lead_scale, &refs, config.trials, &mut rng)? {
            continue;
        }
        let res = FactorizationResult {
            factors,
            scale: norm.lead_scale,
            stats: stats.clone(),
        };
        let clean = res.residuals() == 0;
        if best.as_ref().is_none_or(|b| res.residuals() < b.residuals()) {
            best = Some(res);
        }
        if clean {
            break;
        }
    }
    Ok(match best {
        Some(mut b) => {
            b.stats = stats;
            b
        }
        None => FactorizationResult {
            factors: vec![Factor {
                circuit: f.prune(),
                multiplicity: 1,
                certificate: Certificate::Unverified,
                residual: true,
            }],
            scale: field.one(),
            stats,
        },
    })
}

fn constant_result(f: &Circuit, stats: FactorStats) -> Result<FactorizationResult> {
    let c = f.eval(&vec![f.field().zero(); f.nvars()])?[0];
    if c.is_zero() {
        return Err(Error::Domain("cannot factor the zero polynomial".into()));
    }
    Ok(FactorizationResult {
        factors: Vec::new(),
        scale: c,
        stats,
    })
}
