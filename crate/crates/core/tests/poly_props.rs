//! Ring-level properties of the exact polynomial arithmetic.

mod common;

use common::small_rat;
use infdet_core::rat::{rat_i64, Rat};
use infdet_core::{Monomial, Polynomial};
use proptest::prelude::*;

const NVARS: usize = 3;

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (prop::collection::vec(0u32..3, NVARS), -4i64..=4i64, 1u8..=4),
        0..4,
    )
    .prop_map(|raw| {
        let terms = raw
            .into_iter()
            .map(|(exps, num, den)| (Monomial::new(exps), small_rat(num, den)))
            .collect();
        Polynomial::from_terms(NVARS, terms)
    })
}

fn arb_point() -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec((-3i64..=3i64, 1u8..=3).prop_map(|(n, d)| small_rat(n, d)), NVARS)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn addition_commutes(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn multiplication_commutes(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn multiplication_associates(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiplication_distributes(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn subtraction_inverts_addition(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn leibniz_rule(a in arb_poly(), b in arb_poly(), var in 0usize..NVARS) {
        let lhs = (&a * &b).partial(var).unwrap();
        let rhs = &(&a.partial(var).unwrap() * &b) + &(&a * &b.partial(var).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn partials_commute(a in arb_poly(), v1 in 0usize..NVARS, v2 in 0usize..NVARS) {
        let lhs = a.partial(v1).unwrap().partial(v2).unwrap();
        let rhs = a.partial(v2).unwrap().partial(v1).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in arb_poly(), b in arb_poly(), pt in arb_point()) {
        let sum = (&a + &b).eval(&pt).unwrap();
        prop_assert_eq!(sum, a.eval(&pt).unwrap() + b.eval(&pt).unwrap());
        let prod = (&a * &b).eval(&pt).unwrap();
        prop_assert_eq!(prod, a.eval(&pt).unwrap() * b.eval(&pt).unwrap());
    }

    #[test]
    fn substitution_agrees_with_evaluation(a in arb_poly(), pt in arb_point()) {
        // substituting constants is the same ring map as evaluating
        let consts: Vec<Polynomial> =
            pt.iter().map(|v| Polynomial::constant(NVARS, v.clone())).collect();
        let subbed = a.substitute(&consts).unwrap();
        prop_assert!(subbed.is_constant());
        prop_assert_eq!(subbed.eval(&pt).unwrap(), a.eval(&pt).unwrap());
    }

    #[test]
    fn power_matches_repeated_product(a in arb_poly(), e in 0u32..4) {
        let mut expect = Polynomial::constant(NVARS, rat_i64(1));
        for _ in 0..e {
            expect = &expect * &a;
        }
        prop_assert_eq!(a.pow(e), expect);
    }

    #[test]
    fn float_evaluation_tracks_exact(a in arb_poly(), pt in arb_point()) {
        let exact = a.eval(&pt).unwrap();
        let approx = a.to_float().eval(
            &pt.iter().map(infdet_core::rat::rat_to_f64).collect::<Vec<_>>(),
        );
        let exact_f = infdet_core::rat::rat_to_f64(&exact);
        prop_assert!((exact_f - approx).abs() <= 1e-9 * (1.0 + exact_f.abs()));
    }
}
