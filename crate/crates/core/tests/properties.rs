mod common;

use common::*;
use factorforge::algebra::uni_gcd;
use factorforge::circuit::{expand, expand_mod_ideal};
use factorforge::lift::{normalize, run_lift, NormalizeOptions};
use factorforge::pipeline::{factor, FactorConfig};
use factorforge::pit::{equal_up_to_scalar, verify_product};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normalization_round_trip(seed in any::<u64>(), n in 2usize..=3, deg in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let all: Vec<usize> = (0..n).collect();
        let p = random_dense(&mut rng, n, &all, deg);
        prop_assume!(p.degree() >= 1);
        let f = circuit_of(&p);
        let (norm, fhat, seed_f) = normalize(&f, n - 1, NormalizeOptions::default(), &mut rng).unwrap();
        let dense = expand(&fhat, 16).unwrap().remove(0);
        let coeffs = dense.coeffs_in(n - 1);
        prop_assert_eq!(coeffs.len(), norm.degree + 1);
        prop_assert!(coeffs[norm.degree].is_constant() && coeffs[norm.degree].eval(&vec![fl().zero(); n]).unwrap() == fl().one());
        prop_assert_eq!(seed_f.image, origin_image(&dense, n - 1));
        let back = norm.denormalize(&fhat).unwrap();
        prop_assert!(equal_up_to_scalar(&back, &f, 10, &mut rng).unwrap());
    }

    #[test]
    fn lift_is_congruent_at_every_step(seed in any::<u64>(), d1 in 1usize..=3, d2 in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, y) = (3, 2);
        let g = planted_monic(&mut rng, n, d1);
        let h = planted_monic(&mut rng, n, d2);
        let (gi, hi) = (origin_image(&g, y), origin_image(&h, y));
        prop_assume!(uni_gcd(&gi, &hi).unwrap().degree() == 0);
        let f = product_circuit(&[(&circuit_of(&g), 1), (&circuit_of(&h), 1)], fl().one());
        let d = d1 + d2;
        let (_, st) = run_lift(&f, y, &gi, &hi, d, &mut rng).unwrap();
        let hist = expand_mod_ideal(&st.history_circuit(), &[0, 1], d + 1);
        let truth: Vec<_> = g.coeffs_in(y)[..d1].iter().chain(&h.coeffs_in(y)[..d2]).cloned().collect();
        for k in 1..=d + 1 {
            for (i, t) in truth.iter().enumerate() {
                prop_assert_eq!(hist[(k - 1) * d + i].truncate_mod_ideal(&[0, 1], k), t.truncate_mod_ideal(&[0, 1], k));
            }
        }
    }

    #[test]
    fn factors_multiply_back(seed in any::<u64>(), n in 2usize..=3, m1 in 1u32..=2, m2 in 1u32..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let all: Vec<usize> = (0..n).collect();
        let a = random_dense(&mut rng, n, &all, 2);
        let b = random_dense(&mut rng, n, &all, 1);
        let f = product_circuit(&[(&circuit_of(&a), m1), (&circuit_of(&b), m2)], fl().random_nonzero(&mut rng));
        let res = factor(&f, &FactorConfig { seed, ..Default::default() }).unwrap();
        let parts: Vec<_> = res.factors.iter().map(|x| (&x.circuit, x.multiplicity)).collect();
        prop_assert!(verify_product(&f, res.scale, &parts, 20, &mut rng).unwrap());
        let degree: u32 = res.factors.iter().map(|x| expand(&x.circuit, 16).unwrap()[0].degree() as u32 * x.multiplicity).sum();
        prop_assert_eq!(degree, 2 * m1 + m2);
    }
}
