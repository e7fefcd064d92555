//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use factorforge::algebra::{uni_gcd, DensePoly, FieldElement, UniPoly};
use factorforge::circuit::{expand, expand_mod_ideal, homogeneous_components, random_circuit, serialize_circuit, Circuit};
use factorforge::lift::{lift_normalized, normalize, run_lift, NormalizeOptions};
use factorforge::pipeline::{factor, FactorConfig};
use factorforge::pit::{equal_up_to_scalar, random_point, verify_product};
use factorforge::purepower::{extract_root, PowerInstance};
use factorforge::resultant::{gcd_is_nontrivial, jacobian_at_seed, sylvester_univariate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

fn report(n: usize, name: &str, v: &Verdict, took: Duration) {
    println!(
        "criterion {n} ({name}): {} - {} [{:.1}s]",
        if v.pass { "PASS" } else { "FAIL" },
        v.detail,
        took.as_secs_f64()
    );
}

/// Planted coprime pairs; after every Newton step the approximations agree
/// with the true coefficients modulo `<x>^k`, and the readout is exact.
fn lift_ladder() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let start = Instant::now();
    let mut ok = 0;
    let mut failures = Vec::new();
    for inst in 0..100 {
        let n = 2 + inst % 3;
        let y = n - 1;
        let xs: Vec<usize> = (0..y).collect();
        let (d1, d2) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let (g, h, gi, hi) = loop {
            let g = planted_monic(&mut rng, n, d1);
            let h = planted_monic(&mut rng, n, d2);
            let (gi, hi) = (origin_image(&g, y), origin_image(&h, y));
            if uni_gcd(&gi, &hi).unwrap().degree() == 0 {
                break (g, h, gi, hi);
            }
        };
        let d = d1 + d2;
        let f = product_circuit(&[(&circuit_of(&g), 1), (&circuit_of(&h), 1)], fl().one());
        let truth: Vec<DensePoly> = g.coeffs_in(y)[..d1]
            .iter()
            .chain(&h.coeffs_in(y)[..d2])
            .cloned()
            .collect();
        let (_, st) = run_lift(&f, y, &gi, &hi, d, &mut rng).unwrap();
        let hist = expand_mod_ideal(&st.history_circuit(), &xs, d + 1);
        let mut good = st.k == d + 1;
        for k in 1..=d + 1 {
            for (i, t) in truth.iter().enumerate() {
                if hist[(k - 1) * d + i] .truncate_mod_ideal(&xs, k) != t.truncate_mod_ideal(&xs, k) {
                    good = false;
                }
            }
        }
        let pair = lift_normalized(&f, y, &gi, &hi, d, &mut rng).unwrap();
        good &= expand(&pair.g, 8).unwrap()[0] == g && expand(&pair.h, 8).unwrap()[0] == h;
        if good {
            ok += 1;
        } else {
            failures.push(inst);
        }
    }
    let took = start.elapsed();
    Verdict {
        pass: ok == 100 && took <= Duration::from_secs(300),
        detail: format!("{ok}/100 ladders exact, runtime {:.1}s (limit 300s), failures {failures:?}", took.as_secs_f64()),
    }
}

fn resultant_criterion() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut agree = 0;
    let mut planted = 0;
    for inst in 0..300 {
        let n = 2 + inst % 2;
        let y = n - 1;
        let all: Vec<usize> = (0..n).collect();
        let pick = |rng: &mut ChaCha8Rng, deg| loop {
            let p = random_dense(rng, n, &all, deg);
            if p.degree_in(y) >= 1 {
                break p;
            }
        };
        let (g, h) = if inst % 2 == 0 {
            planted += 1;
            let c = pick(&mut rng, 1);
            let (a, b) = (pick(&mut rng, 2), pick(&mut rng, 2));
            (&a * &c, &b * &c)
        } else {
            (pick(&mut rng, 3), pick(&mut rng, 3))
        };
        let oracle = shares_factor(&g, &h, y, &mut rng);
        if gcd_is_nontrivial(&g, &h, y).unwrap() == oracle && oracle == (inst % 2 == 0) {
            agree += 1;
        }
    }
    Verdict {
        pass: agree == 300,
        detail: format!("{agree}/300 verdicts agree with the oracle ({planted} planted common factors)"),
    }
}

fn random_monic<R: Rng>(rng: &mut R, d: usize) -> UniPoly {
    let f = fl();
    let mut c: Vec<FieldElement> = (0..d).map(|_| f.random(rng)).collect();
    c.push(f.one());
    UniPoly::new(f, c)
}

fn jacobian_sylvester() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let f = fl();
    let mut ok = 0;
    let mut singular = 0;
    for inst in 0..100 {
        let (d1, d2) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let (g, h) = if inst % 2 == 0 && d1 > 1 && d2 > 1 {
            let c = random_monic(&mut rng, 1);
            (&random_monic(&mut rng, d1 - 1) * &c, &random_monic(&mut rng, d2 - 1) * &c)
        } else {
            (random_monic(&mut rng, d1), random_monic(&mut rng, d2))
        };
        let j = jacobian_at_seed(&g, &h).unwrap();
        let s = sylvester_univariate(&g, &h).unwrap();
        let (dj, ds) = (j.determinant(f), s.determinant(f));
        let coprime = uni_gcd(&g, &h).unwrap().degree() == 0;
        if !coprime {
            singular += 1;
        }
        if j.rank() == s.rank() && (dj == ds || dj == -ds) && (!dj.is_zero()) == coprime {
            ok += 1;
        }
    }
    Verdict {
        pass: ok == 100,
        detail: format!("{ok}/100 pairs match in rank, |det| and coprimality ({singular} with a common factor)"),
    }
}

fn homogenization_bound() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let f = fl();
    let mut ok = 0;
    let mut worst = 0.0f64;
    let mut made = 0;
    while made < 50 {
        let n = rng.gen_range(1..=4);
        let gates = rng.gen_range(6..=40);
        let c = random_circuit(f, &mut rng, n, gates, Some(8));
        let s = c.size();
        if s == 0 || s > 60 {
            continue;
        }
        made += 1;
        let k = rng.gen_range(0..=8);
        let h = homogeneous_components(&c, k);
        let bound = 8 * (k + 1) * (k + 1) * s + 4 * (k + 1) * n;
        let dense = expand(&c, 64).unwrap().remove(0);
        let comps = expand(&h, 64).unwrap();
        let mut good = h.size() <= bound && comps.len() == k + 1;
        for (j, comp) in comps.iter().enumerate() {
            good &= *comp == dense.homogeneous_component(j);
        }
        // identity test against the circuit itself when nothing is truncated
        if dense.degree() <= k as i64 {
            for _ in 0..5 {
                let pt = random_point(f, n, &mut rng);
                let sum = h.eval(&pt).unwrap().iter().fold(f.zero(), |a, &v| a + v);
                good &= sum == c.eval(&pt).unwrap()[0];
            }
        }
        worst = worst.max(h.size() as f64 / bound as f64);
        if good {
            ok += 1;
        }
    }
    Verdict {
        pass: ok == 50,
        detail: format!("{ok}/50 circuits correct within 8(k+1)^2 s + 4(k+1) n, largest size/bound {worst:.3}"),
    }
}

fn pure_powers() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut roots = 0;
    let mut within = 0;
    let mut excess = Vec::new();
    for inst in 0..50 {
        let n = 2 + inst % 2;
        let e = 2 + (inst % 4) as u64;
        let all: Vec<usize> = (0..n).collect();
        let g = loop {
            let deg = rng.gen_range(1..=4);
            let p = random_dense(&mut rng, n, &all, deg);
            if p.degree() >= 1 {
                break p;
            }
        };
        let f = product_circuit(&[(&circuit_of(&g), e as u32)], fl().one());
        let inst_ = PowerInstance::new(&f, e).unwrap();
        if inst_.within_size_bound() {
            within += 1;
        } else {
            excess.push(inst_.fext.size() - inst_.size_bound());
        }
        if let Ok(root) = extract_root(&f, e, &mut rng) {
            let r = expand(&root, 16).unwrap().remove(0);
            if r.pow(e as u32) == expand(&f, 64).unwrap()[0] {
                roots += 1;
            }
        }
    }
    excess.sort_unstable();
    excess.dedup();
    Verdict {
        pass: roots == 50 && within == 50,
        detail: format!(
            "{roots}/50 roots with expand(g)^e = expand(f); size(fext) <= size(f) + 2 ceil(log2 e) + 2 held in {within}/50 (excess edges {excess:?}: the sign of -f needs a scalar multiplication gate)"
        ),
    }
}

struct Planted {
    f: Circuit,
    parts: Vec<(Circuit, u32)>,
    recoverable: bool,
}

fn planted_instance<R: Rng>(rng: &mut R) -> Planted {
    loop {
        let n = rng.gen_range(2..=4);
        let y = n - 1;
        let all: Vec<usize> = (0..n).collect();
        let k = rng.gen_range(1..=3);
        let degs: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=3)).collect();
        let mults: Vec<u32> = (0..k).map(|_| rng.gen_range(1..=3)).collect();
        let total: usize = degs.iter().zip(&mults).map(|(&d, &m)| d * m as usize).sum();
        if total > 10 {
            continue;
        }
        let polys: Vec<DensePoly> = degs.iter().map(|&d| random_dense(rng, n, &all, d)).collect();
        let mut recoverable = polys.iter().all(|p| certified_irreducible(p, y, rng));
        for i in 0..k {
            for j in i + 1..k {
                recoverable &= !shares_factor(&polys[i], &polys[j], y, rng);
            }
        }
        let parts: Vec<(Circuit, u32)> = polys.iter().map(circuit_of).zip(mults).collect();
        let refs: Vec<(&Circuit, u32)> = parts.iter().map(|(c, m)| (c, *m)).collect();
        let f = product_circuit(&refs, fl().random_nonzero(rng));
        return Planted { f, parts, recoverable };
    }
}

fn end_to_end() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let start = Instant::now();
    let mut identity = 0;
    let mut recoverable = 0;
    let mut recovered = 0;
    let mut deterministic = 0;
    let mut det_checked = 0;
    let mut errors = Vec::new();
    for inst in 0..200 {
        let p = planted_instance(&mut rng);
        let cfg = FactorConfig { seed: inst as u64, ..Default::default() };
        let res = match factor(&p.f, &cfg) {
            Ok(r) => r,
            Err(e) => {
                errors.push(format!("{inst}: {e}"));
                continue;
            }
        };
        let refs: Vec<(&Circuit, u32)> = res.factors.iter().map(|f| (&f.circuit, f.multiplicity)).collect();
        if verify_product(&p.f, res.scale, &refs, 20, &mut rng).unwrap() {
            identity += 1;
        }
        if p.recoverable {
            recoverable += 1;
            let matched = res.factors.len() == p.parts.len()
                && p.parts.iter().all(|(c, m)| {
                    res.factors
                        .iter()
                        .any(|f| f.multiplicity == *m && equal_up_to_scalar(&f.circuit, c, 10, &mut rng).unwrap())
                });
            if matched {
                recovered += 1;
            }
        }
        if inst % 10 == 0 {
            det_checked += 1;
            let again = factor(&p.f, &cfg).unwrap();
            let same = again.stats_text() == res.stats_text()
                && again
                    .factors
                    .iter()
                    .zip(&res.factors)
                    .all(|(a, b)| serialize_circuit(&a.circuit) == serialize_circuit(&b.circuit));
            if same {
                deterministic += 1;
            }
        }
    }
    let took = start.elapsed();
    Verdict {
        pass: identity == 200
            && recovered == recoverable
            && deterministic == det_checked
            && took <= Duration::from_secs(900),
        detail: format!(
            "product identity {identity}/200, planted multiset recovered {recovered}/{recoverable} certified instances, deterministic reruns {deterministic}/{det_checked}, runtime {:.1}s (limit 900s){}",
            took.as_secs_f64(),
            if errors.is_empty() { String::new() } else { format!(", errors {errors:?}") }
        ),
    }
}

/// `prod_{i=1}^m (y + i x1 + x2)` over (x1, x2, y).
fn scaling_member(m: usize) -> Circuit {
    let f = fl();
    let parts: Vec<Circuit> = (1..=m)
        .map(|i| {
            let p = DensePoly::from_terms(
                f,
                3,
                vec![
                    (vec![0, 0, 1], f.one()),
                    (vec![1, 0, 0], f.elem(i as u64)),
                    (vec![0, 1, 0], f.one()),
                ],
            );
            circuit_of(&p)
        })
        .collect();
    let refs: Vec<(&Circuit, u32)> = parts.iter().map(|c| (c, 1)).collect();
    product_circuit(&refs, f.one())
}

fn size_growth() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let mut additive = 0;
    let mut kappa = 0.0f64;
    let mut lines = Vec::new();
    for m in 2..=6 {
        let f = scaling_member(m);
        let s = f.size();
        let opts = NormalizeOptions { squarefree: true, ..Default::default() };
        let (norm, fhat, seed) = normalize(&f, 2, opts, &mut rng).unwrap();
        let g = seed.factors[0].0.clone();
        let h = seed.image.div_exact(&g).unwrap();
        let pair = lift_normalized(&fhat, 2, &g, &h, norm.degree, &mut rng).unwrap();
        let growth: Vec<usize> = pair.stats.size_log.windows(2).map(|w| w[1] - w[0]).collect();
        if growth.windows(2).all(|w| w[0] == w[1]) {
            additive += 1;
        }
        let res = factor(&f, &FactorConfig { seed: m as u64, ..Default::default() }).unwrap();
        let biggest = res.factors.iter().map(|x| x.circuit.size()).max().unwrap_or(0);
        let k = biggest as f64 / (s as f64 * (m as f64).powi(3));
        kappa = kappa.max(k);
        lines.push(format!("m={m}: s={s}, step growth {:?}, largest factor {biggest}", growth.first()));
    }
    Verdict {
        pass: additive == 5,
        detail: format!("{additive}/5 instances with constant per-step growth; fitted kappa = {kappa:.2} in size <= kappa s d^3 ({})", lines.join("; ")),
    }
}

fn main() {
    let suites: Vec<(&str, fn() -> Verdict)> = vec![
        ("lift ladder", lift_ladder),
        ("resultant criterion", resultant_criterion),
        ("Jacobian vs Sylvester", jacobian_sylvester),
        ("homogenization size bound", homogenization_bound),
        ("pure powers", pure_powers),
        ("end to end", end_to_end),
        ("size growth", size_growth),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|v| v.parse().ok());
    let mut failed = 0;
    for (i, (name, run)) in suites.into_iter().enumerate() {
        if only.is_some_and(|o| o != i + 1) {
            continue;
        }
        let t = Instant::now();
        let v = run();
        report(i + 1, name, &v, t.elapsed());
        if !v.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
