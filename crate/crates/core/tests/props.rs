//! Property tests for the word and polynomial kernels.

use curvegroup::poly::{parse_rational_poly, MultiPoly};
use curvegroup::word::{Gen, Word, ALPHA, BETA};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn arb_letters(max_len: usize) -> impl Strategy<Value = Vec<(Gen, i64)>> {
    prop::collection::vec(
        (prop::sample::select(vec![ALPHA, BETA]), -4i64..=4),
        0..max_len,
    )
}

proptest! {
    #[test]
    fn free_reduce_is_idempotent(letters in arb_letters(64)) {
        let w = Word::from_letters(letters);
        prop_assert_eq!(w.free_reduce(), w);
    }

    #[test]
    fn word_times_inverse_is_identity(letters in arb_letters(64)) {
        let w = Word::from_letters(letters);
        prop_assert!(w.multiply(&w.invert()).is_identity());
        prop_assert!(w.invert().multiply(&w).is_identity());
    }

    #[test]
    fn multiplication_is_associative(
        a in arb_letters(16),
        b in arb_letters(16),
        c in arb_letters(16),
    ) {
        let (a, b, c) = (Word::from_letters(a), Word::from_letters(b), Word::from_letters(c));
        prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
    }

    #[test]
    fn power_matches_repeated_multiplication(letters in arb_letters(8), n in -6i64..=6) {
        let w = Word::from_letters(letters);
        let mut expected = Word::identity();
        let base = if n < 0 { w.invert() } else { w.clone() };
        for _ in 0..n.unsigned_abs() {
            expected = expected.multiply(&base);
        }
        prop_assert_eq!(w.power(n), expected);
    }

    #[test]
    fn word_text_round_trips(letters in arb_letters(24)) {
        let w = Word::from_letters(letters);
        prop_assert_eq!(Word::parse(&w.to_string()).unwrap(), w);
    }
}

fn arb_poly() -> impl Strategy<Value = MultiPoly<BigRational>> {
    prop::collection::vec(
        (
            prop::collection::vec(0u32..4, 3),
            -9i64..=9,
            1i64..=4,
        ),
        0..6,
    )
    .prop_map(|terms| {
        let mut p = MultiPoly::zero(3);
        for (exps, num, den) in terms {
            p = p.add(&MultiPoly::monomial(
                3,
                exps,
                BigRational::new(BigInt::from(num), BigInt::from(den)),
            ));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), MultiPoly::zero(3));
    }

    #[test]
    fn exact_divide_recovers_factors(a in arb_poly(), b in arb_poly()) {
        prop_assume!(!b.is_zero());
        let product = a.mul(&b);
        prop_assert_eq!(product.exact_divide(&b).unwrap(), a);
    }

    #[test]
    fn poly_text_round_trips(a in arb_poly()) {
        let names = ["x", "y", "z"];
        let printed = curvegroup::poly::format_rational_poly(&a, &names);
        prop_assert_eq!(parse_rational_poly(&printed, &names).unwrap(), a);
    }
}
