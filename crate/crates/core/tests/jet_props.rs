use jetdiff_core::genericity::{full_genericity_audit, pair_transversality_check, Verdict};
use jetdiff_core::injectivity::{triangular_identity, vanishing_lemma_check, verify_injectivity_theorem, verify_rx_sx_proposition, GateOptions};
use jetdiff_core::jetbuilder::{build_jet, expand_lambda, JetSpec, SurfacePair};
use jetdiff_core::polyring::ExactPoly;
use jetdiff_core::sampling::{random_field, random_poly, random_surface};
use jetdiff_core::surfacecharts::restrict_to_surface;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sorted_surface(r: &mut ChaCha8Rng, max: u32) -> SurfacePair {
    let (d, e) = (r.gen_range(1..=max), r.gen_range(1..=max));
    random_surface(d.min(e), d.max(e), r)
}

fn generic(d: u32, e: u32, seed: u64) -> SurfacePair {
    let mut r = rng(seed);
    loop {
        let s = random_surface(d, e, &mut r);
        if full_genericity_audit(&s, seed).unwrap().pass {
            return s;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lambda_reconstructs_the_jet(seed in any::<u64>(), m in 1u32..=3, a in 0u32..=2) {
        let mut r = rng(seed);
        let surf = sorted_surface(&mut r, 4);
        let spec = JetSpec::new(m, 0, a).unwrap();
        let field = random_field(m, a, &mut r);
        let jet = build_jet(&field, &surf, &spec).unwrap();
        prop_assert_eq!(expand_lambda(&field, &surf, &spec).unwrap().reconstruct(), jet.clone());
        // every monomial is homogeneous of degree m in (x', y')
        for (mono, _) in jet.terms() {
            let e = mono.exponents();
            prop_assert_eq!(e[2] + e[3], m);
        }
    }

    #[test]
    fn lambda_is_linear(seed in any::<u64>(), m in 1u32..=2, a in 0u32..=2, n in -5i64..=5) {
        let mut r = rng(seed);
        let surf = sorted_surface(&mut r, 3);
        let spec = JetSpec::new(m, 0, a).unwrap();
        let (f, g) = (random_field(m, a, &mut r), random_field(m, a, &mut r));
        let c = BigRational::from_integer(BigInt::from(n));
        let lf = expand_lambda(&f, &surf, &spec).unwrap();
        let lg = expand_lambda(&g, &surf, &spec).unwrap();
        let sum = expand_lambda(&f.add(&g).unwrap(), &surf, &spec).unwrap();
        let scaled = expand_lambda(&f.scale(&c), &surf, &spec).unwrap();
        for alpha in 0..=m {
            prop_assert_eq!(sum.get(alpha), &(lf.get(alpha) + lg.get(alpha)));
            prop_assert_eq!(scaled.get(alpha), &lf.get(alpha).scale(&c));
        }
    }

    #[test]
    fn restriction_round_trip(seed in any::<u64>(), m in 1u32..=2, a in 0u32..=1) {
        let mut r = rng(seed);
        let surf = sorted_surface(&mut r, 4);
        let spec = JetSpec::new(m, 0, a).unwrap();
        let field = random_field(m, a, &mut r);
        let res = restrict_to_surface(&field, &surf, &spec).unwrap();
        prop_assert!(res.exact);
        let vars = res.quotient.vars().clone();
        let z = ExactPoly::var(&vars, "z").unwrap().pow(m * (surf.d() - 1));
        let t = ExactPoly::var(&vars, "t").unwrap().pow(m * (surf.e() - 1));
        prop_assert_eq!(&(&res.quotient * &z) * &t, res.substituted);
    }

    #[test]
    fn triangular_slices(seed in any::<u64>(), m in 1u32..=3) {
        let mut r = rng(seed);
        let surf = sorted_surface(&mut r, 3);
        let field = random_field(m, 1, &mut r);
        for k in 0..=m {
            prop_assert!(triangular_identity(&surf, &field, k).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn pair_check_passes_only_at_the_bezout_count(seed in any::<u64>(), dp in 1u32..=3, dq in 1u32..=3) {
        let mut r = rng(seed);
        let (p, q) = (random_poly(dp, &mut r), random_poly(dq, &mut r));
        let rep = pair_transversality_check(&p, &q, seed).unwrap();
        if rep.verdict == Verdict::Pass {
            prop_assert_eq!(rep.resultant_degree, Some(dp * dq));
            prop_assert!(rep.squarefree);
        }
    }

    #[test]
    fn macaulay_verdict_is_stable_in_the_truncation(seed in any::<u64>(), dp in 1u32..=3, dq in 1u32..=3) {
        let mut r = rng(seed);
        let (p, q) = (random_poly(dp, &mut r), random_poly(dq, &mut r));
        prop_assume!(pair_transversality_check(&p, &q, seed).unwrap().verdict == Verdict::Pass);
        for amax in 0..dp {
            let base = vanishing_lemma_check(&p, &q, amax, 0, seed).unwrap();
            let raised = vanishing_lemma_check(&p, &q, amax, 1, seed).unwrap();
            prop_assert_eq!(base.holds, raised.holds);
            if dq >= dp {
                prop_assert!(base.holds);
            }
        }
    }
}

#[test]
fn theorem_conformance_on_generic_surfaces() {
    let mut seed = 300;
    for d in 2..=4u32 {
        for m in 1..=2u32 {
            for a in 0..=d - 2 {
                seed += 1;
                let surf = generic(d, d, seed);
                let opts = GateOptions { seed, ..Default::default() };
                let out = verify_injectivity_theorem(&surf, m, a, &opts).unwrap();
                assert!(out.holds && out.hypotheses_verified, "d={d} m={m} a={a}: rank {} of {}", out.rank, out.columns);
                assert!(verify_rx_sx_proposition(&surf, m, None, &opts).unwrap().holds);
            }
        }
    }
}

// With a = d - 1 the outcome is recorded, not asserted.
#[test]
fn sharpness_at_a_equal_d_minus_one_is_recorded() {
    for d in 2..=3u32 {
        let surf = generic(d, d, 400 + u64::from(d));
        let opts = GateOptions { seed: 1, allow_degree_cap: true, ..Default::default() };
        let out = verify_injectivity_theorem(&surf, 1, d - 1, &opts).unwrap();
        println!("d = e = {d}, m = 1, a = {}: rank {} of {} columns", d - 1, out.rank, out.columns);
        assert!(out.rank <= out.columns);
        assert!(verify_injectivity_theorem(&surf, 1, d - 1, &GateOptions { seed: 1, ..Default::default() }).is_err());
    }
}
