//! Standalone property suites for the polynomial core: term-order axioms,
//! agreement of the two comparison routes, exactness of the rational
//! arithmetic, and the ring laws.

use std::cmp::Ordering;

use proptest::prelude::*;

use pfaffian_spheres::algebra::monomial::{compare, compare_by_sorted_vars};
use pfaffian_spheres::{Monomial, Polynomial, Rational, VariableOrder};

const NUM_VARS: usize = 6;

fn arb_monomial() -> impl Strategy<Value = Monomial> {
    // Up to four variable picks, so the total degree stays at most four.
    prop::collection::vec(0..NUM_VARS, 0..=4).prop_map(|picks| {
        let mut exps = vec![0u16; NUM_VARS];
        for v in picks {
            exps[v] += 1;
        }
        Monomial::from_exps(exps)
    })
}

fn arb_order() -> impl Strategy<Value = VariableOrder> {
    Just((0..NUM_VARS as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(VariableOrder::from_ascending)
}

fn arb_polynomial() -> impl Strategy<Value = Polynomial<Rational>> {
    prop::collection::vec((arb_monomial(), -5i64..=5), 0..=4).prop_map(|terms| {
        Polynomial::from_terms(
            terms
                .into_iter()
                .map(|(m, c)| (m, Rational::from_integer(c.into()))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1500))]

    #[test]
    fn order_is_total_and_antisymmetric(
        order in arb_order(),
        a in arb_monomial(),
        b in arb_monomial(),
    ) {
        let ab = compare(&order, &a, &b);
        let ba = compare(&order, &b, &a);
        prop_assert_eq!(ab, ba.reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
    }

    #[test]
    fn unit_monomial_is_minimal(order in arb_order(), a in arb_monomial()) {
        let one = Monomial::one(NUM_VARS);
        prop_assert_ne!(compare(&order, &one, &a), Ordering::Greater);
    }

    #[test]
    fn order_is_multiplicative(
        order in arb_order(),
        a in arb_monomial(),
        b in arb_monomial(),
        t in arb_monomial(),
    ) {
        prop_assert_eq!(
            compare(&order, &a.mul(&t), &b.mul(&t)),
            compare(&order, &a, &b)
        );
    }

    #[test]
    fn sorted_sequence_rule_is_the_same_order(
        order in arb_order(),
        a in arb_monomial(),
        b in arb_monomial(),
    ) {
        prop_assert_eq!(
            compare_by_sorted_vars(&order, &a, &b),
            compare(&order, &a, &b)
        );
    }

    #[test]
    fn rational_arithmetic_is_exact(
        a in -1_000_000i64..=1_000_000,
        b in 1i64..=1_000_000,
        c in -1_000_000i64..=1_000_000,
        d in 1i64..=1_000_000,
    ) {
        let sum = Rational::new(a.into(), b.into()) + Rational::new(c.into(), d.into());
        prop_assert_eq!(
            sum * Rational::from_integer((b * d).into()),
            Rational::from_integer((a * d + c * b).into())
        );
    }

    #[test]
    fn multiplication_is_commutative(f in arb_polynomial(), g in arb_polynomial()) {
        prop_assert_eq!(f.mul(&g), g.mul(&f));
    }

    #[test]
    fn multiplication_is_associative(
        f in arb_polynomial(),
        g in arb_polynomial(),
        h in arb_polynomial(),
    ) {
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
    }

    #[test]
    fn multiplication_distributes_over_addition(
        f in arb_polynomial(),
        g in arb_polynomial(),
        h in arb_polynomial(),
    ) {
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
    }

    #[test]
    fn addition_has_inverses(f in arb_polynomial()) {
        prop_assert!(f.sub(&f).is_zero());
        prop_assert_eq!(f.add(&Polynomial::zero()), f);
    }
}
