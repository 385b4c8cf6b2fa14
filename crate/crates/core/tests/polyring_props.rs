use jetdiff_core::polyring::{resultant_y, ExactPoly, Monomial, VarSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn xyz() -> VarSet {
    VarSet::new(["x", "y", "z"]).unwrap()
}

fn build(vars: &VarSet, terms: Vec<(Vec<u32>, i64, i64)>) -> ExactPoly {
    ExactPoly::from_terms(
        vars,
        terms.into_iter().map(|(e, n, d)| (Monomial::new(e), BigRational::new(BigInt::from(n), BigInt::from(d)))),
    )
}

fn poly_in(vars: VarSet, max_exp: u32, max_terms: usize) -> impl Strategy<Value = ExactPoly> {
    let n = vars.len();
    proptest::collection::vec((proptest::collection::vec(0..=max_exp, n), -6i64..=6, 1i64..=4), 0..=max_terms)
        .prop_map(move |t| build(&vars, t))
}

fn poly() -> impl Strategy<Value = ExactPoly> {
    poly_in(xyz(), 3, 5)
}

fn xy_poly() -> impl Strategy<Value = ExactPoly> {
    poly_in(VarSet::xy(), 2, 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &ExactPoly::one(&xyz()), p.clone());
    }

    #[test]
    fn derivation_law(p in poly(), q in poly(), v in prop::sample::select(vec!["x", "y", "z"])) {
        let lhs = (&p * &q).diff(v).unwrap();
        let rhs = &(&p.diff(v).unwrap() * &q) + &(&p * &q.diff(v).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_a_homomorphism(p in poly(), q in poly(), a in xy_poly(), b in xy_poly(), c in xy_poly()) {
        let sigma = [("x", a), ("y", b), ("z", c)];
        let prod = (&p * &q).substitute(&sigma).unwrap();
        prop_assert_eq!(prod, &p.substitute(&sigma).unwrap() * &q.substitute(&sigma).unwrap());
        let sum = (&p + &q).substitute(&sigma).unwrap();
        prop_assert_eq!(sum, &p.substitute(&sigma).unwrap() + &q.substitute(&sigma).unwrap());
    }

    #[test]
    fn monomial_quotient_is_exact_when_claimed(p in poly(), k in 0u32..=3, v in prop::sample::select(vec!["x", "y", "z"])) {
        let (quot, exact) = p.monomial_quotient(v, k).unwrap();
        let vpow = ExactPoly::var(&xyz(), v).unwrap().pow(k);
        if exact {
            prop_assert_eq!(&quot * &vpow, p.clone());
        }
        let (back, always) = (&p * &vpow).monomial_quotient(v, k).unwrap();
        prop_assert!(always);
        prop_assert_eq!(back, p);
    }

    #[test]
    fn print_parse_round_trip(p in poly()) {
        let text = p.to_string();
        let back = ExactPoly::parse(&text, &xyz()).unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, p);
    }

    #[test]
    fn resultant_is_multiplicative(p in xy_poly(), q in xy_poly(), r in xy_poly()) {
        prop_assume!(!p.is_zero() && !q.is_zero() && !r.is_zero());
        let lhs = resultant_y(&(&p * &q), &r).unwrap();
        let rhs = &resultant_y(&p, &r).unwrap() * &resultant_y(&q, &r).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
