//! Structural properties of the basis computation: confluence, the
//! membership decision, and stability under presentation changes.

mod common;

use common::small_rat;
use infdet_core::groebner::{groebner, power_certificate, s_polynomial};
use infdet_core::rat::rat_i64;
use infdet_core::{Monomial, Polynomial};
use proptest::prelude::*;

const NVARS: usize = 3;

fn arb_sparse_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (prop::collection::vec(0u32..3, NVARS), -3i64..=3i64, 1u8..=2),
        1..3,
    )
    .prop_map(|raw| {
        let terms = raw
            .into_iter()
            .map(|(exps, num, den)| (Monomial::new(exps), small_rat(num, den)))
            .collect();
        Polynomial::from_terms(NVARS, terms)
    })
}

fn arb_ideal() -> impl Strategy<Value = Vec<Polynomial>> {
    prop::collection::vec(arb_sparse_poly(), 1..4)
}

fn arb_monomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(0u32..2, NVARS).prop_map(|exps| {
        Polynomial::from_terms(NVARS, vec![(Monomial::new(exps), rat_i64(1))])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_s_polynomial_reduces_to_zero(gens in arb_ideal()) {
        let gb = groebner(NVARS, &gens).unwrap();
        let basis = gb.gens();
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                let s = s_polynomial(&basis[i], &basis[j]);
                let r = gb.normal_form(&s).unwrap();
                prop_assert!(r.is_zero(), "S({}, {}) did not reduce", i, j);
            }
        }
    }

    #[test]
    fn generator_combinations_are_members(
        gens in arb_ideal(),
        mults in prop::collection::vec(arb_monomial(), 4),
        coeffs in prop::collection::vec(-3i64..=3i64, 4),
    ) {
        let gb = groebner(NVARS, &gens).unwrap();
        let mut combo = Polynomial::zero(NVARS);
        for (i, g) in gens.iter().enumerate() {
            let m = &mults[i % mults.len()];
            let c = Polynomial::constant(NVARS, rat_i64(coeffs[i % coeffs.len()]));
            combo = &combo + &(&(m * &c) * g);
        }
        prop_assert!(gb.contains(&combo).unwrap());
    }

    #[test]
    fn normal_form_is_idempotent(gens in arb_ideal(), p in arb_sparse_poly()) {
        let gb = groebner(NVARS, &gens).unwrap();
        let once = gb.normal_form(&p).unwrap();
        let twice = gb.normal_form(&once).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn normal_form_splits_membership(gens in arb_ideal(), p in arb_sparse_poly()) {
        // p - NF(p) always lies in the ideal, and NF(p) = 0 iff p does
        let gb = groebner(NVARS, &gens).unwrap();
        let nf = gb.normal_form(&p).unwrap();
        let diff = &p - &nf;
        prop_assert!(gb.contains(&diff).unwrap());
        prop_assert_eq!(nf.is_zero(), gb.contains(&p).unwrap());
    }

    #[test]
    fn basis_is_presentation_independent(gens in arb_ideal(), rot in 0usize..4) {
        // the reduced basis of an ideal does not depend on generator order
        let gb1 = groebner(NVARS, &gens).unwrap();
        let mut shuffled = gens.clone();
        let by = rot % shuffled.len().max(1);
        shuffled.rotate_left(by);
        shuffled.reverse();
        let gb2 = groebner(NVARS, &shuffled).unwrap();
        prop_assert_eq!(gb1.gens(), gb2.gens());
    }

    #[test]
    fn quotients_reassemble_the_input(gens in arb_ideal(), p in arb_sparse_poly()) {
        let gb = groebner(NVARS, &gens).unwrap();
        let (r, quots) = gb.normal_form_with_quotients(&p).unwrap();
        let mut acc = r.clone();
        for (q, g) in quots.iter().zip(gb.gens()) {
            acc = &acc + &(q * g);
        }
        prop_assert_eq!(acc, p);
    }

    #[test]
    fn power_certificate_is_monotone_in_the_bound(gens in arb_ideal(), k_max in 1u32..4) {
        let gb = groebner(NVARS, &gens).unwrap();
        let small = power_certificate(&gb, k_max, &[]).unwrap();
        let large = power_certificate(&gb, k_max + 2, &[]).unwrap();
        match small.k {
            Some(k) => prop_assert_eq!(large.k, Some(k)),
            None => {
                if let Some(k) = large.k {
                    prop_assert!(k > k_max);
                }
            }
        }
    }
}
