//! Cross-module invariants: the rewriting system against the matrix
//! representation, coset enumeration against matrix closure, and the
//! complement presentation against its dihedral-case specialization.

use curvegroup::enumeration::{todd_coxeter, todd_coxeter_with, Strategy};
use curvegroup::presentation::{presentation_complement, presentation_h, GroupParams};
use curvegroup::rep::{build_rep, central_scalar, closure, rep_eval, Mat2};
use curvegroup::rewrite::normal_form;
use curvegroup::word::{Gen, Word, ALPHA, BETA};
use num_bigint::BigInt;
use num_integer::Integer;

const CAP: usize = 1_000_000;

/// Order of a matrix by iterated multiplication.
fn matrix_order(m: &Mat2) -> u64 {
    let id = Mat2::identity(m.conductor());
    let mut acc = m.clone();
    let mut n = 1;
    while acc != id {
        acc = acc.mul(m);
        n += 1;
    }
    n
}

#[test]
fn complement_presentation_has_the_same_order_as_h() {
    for q in [3i64, 5, 7, 9] {
        for k in [1i64, 2, 3] {
            let h_order = todd_coxeter(&presentation_h(q, k).unwrap(), CAP)
                .unwrap()
                .order;
            let params = GroupParams::new(2, q, 2, k, k).unwrap();
            let c_order = todd_coxeter(&presentation_complement(&params), CAP)
                .unwrap()
                .order;
            assert_eq!(h_order, c_order, "q={q} k={k}");
            assert_eq!(h_order as i64, 2 * q * (q - 1) * k);
        }
    }
}

#[test]
fn both_enumeration_strategies_agree_on_the_grid() {
    for q in [3i64, 5, 7, 9] {
        for k in [1i64, 2, 3] {
            let pres = presentation_h(q, k).unwrap();
            let a = todd_coxeter_with(&pres, CAP, Strategy::DefinitionDriven).unwrap();
            let b = todd_coxeter_with(&pres, CAP, Strategy::RelatorDriven).unwrap();
            assert_eq!(a.order, b.order, "q={q} k={k}");
        }
    }
}

#[test]
fn rewriting_is_sound_under_the_k1_representation() {
    // Every freely reduced word of length <= 8 maps to the same matrix as
    // its normal form a^M b^N (N taken modulo ord(B) = q(q-1) at k = 1).
    for q in [3i64, 5, 7, 9] {
        let (a, b) = build_rep(q, 1).unwrap();
        let id = Mat2::identity(a.conductor());
        let ord_b = matrix_order(&b);
        assert_eq!(ord_b as i64, q * (q - 1), "ord(B) at k=1");

        let mut b_pows = Vec::with_capacity(ord_b as usize);
        let mut m = id.clone();
        for _ in 0..ord_b {
            b_pows.push(m.clone());
            m = m.mul(&b);
        }
        let a_b_pows: Vec<Mat2> = b_pows.iter().map(|p| a.mul(p)).collect();

        let letters = [(ALPHA, 1i64), (ALPHA, -1), (BETA, 1), (BETA, -1)];
        let mats = [a.clone(), a.inv().unwrap(), b.clone(), b.inv().unwrap()];
        let ord_big = BigInt::from(ord_b);
        let mut checked = 0u64;
        let mut stack: Vec<(Vec<(Gen, i64)>, Mat2)> = vec![(Vec::new(), id.clone())];
        while let Some((raw, mat)) = stack.pop() {
            checked += 1;
            let word = Word::from_letters(raw.iter().copied());
            let nf = normal_form(&word, q).unwrap();
            let residue = usize::try_from(nf.beta_exp.mod_floor(&ord_big)).unwrap();
            let expected = if nf.alpha_exp == 0 {
                &b_pows[residue]
            } else {
                &a_b_pows[residue]
            };
            assert_eq!(&mat, expected, "q={q}, word {word}");
            if raw.len() < 8 {
                for (i, &(g, e)) in letters.iter().enumerate() {
                    if let Some(&(lg, le)) = raw.last() {
                        if lg == g && le == -e {
                            continue;
                        }
                    }
                    let mut next = raw.clone();
                    next.push((g, e));
                    stack.push((next, mat.mul(&mats[i])));
                }
            }
        }
        assert_eq!(checked, 13_121, "reduced words of length <= 8");
    }
}

#[test]
fn normal_form_parametrization_covers_the_group_exactly_when_orders_match() {
    // The map (M, N) -> A^M B^N for M in {0,1}, 0 <= N < ord(B) is always
    // injective; it covers the closure exactly when 2 ord(B) equals the
    // group order. Both sides of that equivalence are computed, not
    // assumed.
    for q in [3i64, 5, 7, 9] {
        for k in [1i64, 2, 3] {
            let (a, b) = build_rep(q, k).unwrap();
            let group = closure(&[a.clone(), b.clone()], 10_000).unwrap();
            let ord_b = matrix_order(&b);
            let mut image = std::collections::HashSet::new();
            let mut m = Mat2::identity(a.conductor());
            for _ in 0..ord_b {
                assert!(image.insert(m.clone()), "B powers repeat early");
                assert!(image.insert(a.mul(&m)), "A B^n collides");
                m = m.mul(&b);
            }
            assert_eq!(image.len() as u64, 2 * ord_b, "injectivity at ({q},{k})");
            let covers = image.len() == group.order();
            let orders_match = 2 * ord_b == group.order() as u64;
            assert_eq!(covers, orders_match, "q={q} k={k}");
            if covers {
                for el in group.elements() {
                    assert!(image.contains(el));
                }
            }
            // ord(B) works out to 2rkq / gcd(q,k), so the parametrization
            // is onto exactly for gcd(q,k) = 1.
            assert_eq!(orders_match, q.gcd(&k) == 1, "q={q} k={k}");
        }
    }
}

#[test]
fn scalar_subgroup_matches_the_central_scalar_order_on_the_grid() {
    for q in [3i64, 5, 7, 9] {
        for k in [1i64, 2, 3] {
            let r = (q - 1) / 2;
            let (a, b) = build_rep(q, k).unwrap();
            let group = closure(&[a.clone(), b.clone()], 10_000).unwrap();
            let scalars = group
                .elements()
                .iter()
                .filter(|m| m.as_scalar().is_some())
                .count();
            let c = central_scalar(q, k).unwrap();
            assert_eq!(c.multiplicative_order().unwrap(), (2 * r * k) as u64);
            assert_eq!(scalars as i64, k * (q - 1), "q={q} k={k}");
        }
    }
}

#[test]
fn witness_words_reproduce_their_elements() {
    let (a, b) = build_rep(5, 2).unwrap();
    let group = closure(&[a.clone(), b.clone()], 10_000).unwrap();
    for (el, witness) in group.elements().iter().zip(group.witnesses()) {
        assert_eq!(&rep_eval(witness, &a, &b), el);
    }
}

#[test]
fn h_relators_evaluate_to_identity_on_the_grid() {
    for q in [3i64, 5, 7, 9] {
        for k in [1i64, 2, 3] {
            let (a, b) = build_rep(q, k).unwrap();
            let id = Mat2::identity(a.conductor());
            for rel in presentation_h(q, k).unwrap().relators() {
                assert_eq!(rep_eval(rel, &a, &b), id, "q={q} k={k} relator {rel}");
            }
        }
    }
}
