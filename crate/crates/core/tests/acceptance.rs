//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `--nocapture`). Tolerances are exact equalities;
//! stated wall-clock budgets are asserted.
//!
//! Run with: cargo test -p curvegroup --test acceptance -- --nocapture

use std::time::{Duration, Instant};

use curvegroup::curve::{
    audit_with_resample, build_f, curve_weights, genus_degree_oracle, genus_general,
    genus_theorem, singularity_audit, zariski_quartic, DEFAULT_PRIMES, MAX_RESAMPLES,
};
use curvegroup::enumeration::{abelianization, todd_coxeter};
use curvegroup::presentation::{presentation_h, GroupParams};
use curvegroup::rep::{build_rep, closure, extension_structure, rep_eval, verify_relations, Mat2};
use curvegroup::rewrite::normal_form;
use curvegroup::word::{Gen, Word, ALPHA, BETA};
use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GRID_Q: [i64; 4] = [3, 5, 7, 9];
const GRID_K: [i64; 3] = [1, 2, 3];
const COSET_CAP: usize = 1_000_000;
const CLOSURE_CAP: usize = 10_000;

struct Criterion {
    label: &'static str,
    budget: Option<Duration>,
    started: Instant,
}

impl Criterion {
    fn start(label: &'static str, budget: Option<Duration>) -> Criterion {
        Criterion {
            label,
            budget,
            started: Instant::now(),
        }
    }

    fn finish(self) {
        let elapsed = self.started.elapsed();
        if let Some(budget) = self.budget {
            assert!(
                elapsed <= budget,
                "criterion {}: {elapsed:?} exceeded the {budget:?} budget",
                self.label
            );
        }
        println!("criterion {}: PASS ({elapsed:?})", self.label);
    }
}

#[test]
fn acceptance_01_zariski_case_order_twelve() {
    let c = Criterion::start("1 (order of H(3;1))", Some(Duration::from_secs(1)));
    let tc = todd_coxeter(&presentation_h(3, 1).unwrap(), COSET_CAP).unwrap();
    assert_eq!(tc.order, 12);
    let (a, b) = build_rep(3, 1).unwrap();
    let group = closure(&[a, b], CLOSURE_CAP).unwrap();
    assert_eq!(group.order(), 12);
    c.finish();
}

#[test]
fn acceptance_02_order_grid() {
    let c = Criterion::start("2 (order grid)", Some(Duration::from_secs(30)));
    for q in GRID_Q {
        for k in GRID_K {
            let expected = (2 * q * (q - 1) * k) as usize;
            let tc = todd_coxeter(&presentation_h(q, k).unwrap(), COSET_CAP).unwrap();
            let (a, b) = build_rep(q, k).unwrap();
            let group = closure(&[a, b], CLOSURE_CAP).unwrap();
            assert_eq!(tc.order, expected, "todd_coxeter at ({q},{k})");
            assert_eq!(group.order(), expected, "closure at ({q},{k})");
        }
    }
    c.finish();
}

#[test]
fn acceptance_03_extension_structure_grid() {
    let c = Criterion::start("3 (extension structure)", None);
    for q in GRID_Q {
        for k in GRID_K {
            let (a, b) = build_rep(q, k).unwrap();
            let group = closure(&[a, b], CLOSURE_CAP).unwrap();
            let ext = extension_structure(&group, q);
            assert_eq!(
                ext.scalar_subgroup_order as i64,
                k * (q - 1),
                "scalar subgroup at ({q},{k})"
            );
            assert!(ext.scalar_subgroup_is_central, "central at ({q},{k})");
            assert_eq!(ext.pgl_image_order as i64, 2 * q, "pgl order at ({q},{k})");
            assert!(ext.pgl_image_is_dihedral, "dihedral at ({q},{k})");
        }
    }
    c.finish();
}

#[test]
fn acceptance_04_representation_relations_grid() {
    let c = Criterion::start("4 (representation relations)", None);
    for q in GRID_Q {
        for k in GRID_K {
            let (a, b) = build_rep(q, k).unwrap();
            let report = verify_relations(&a, &b, q, k).unwrap();
            assert!(report.all_hold(), "relations at ({q},{k}): {report:?}");
        }
    }
    c.finish();
}

#[test]
fn acceptance_05_abelianization_grid() {
    let c = Criterion::start("5 (abelianization)", None);
    for q in GRID_Q {
        for k in GRID_K {
            let ab = abelianization(&presentation_h(q, k).unwrap());
            let expected = (2 * (q - 1) * k) as u64;
            assert!(
                ab.is_cyclic_of_order(expected),
                "H({q};{k}) should abelianize to Z/{expected}, got {ab:?}"
            );
        }
    }
    c.finish();
}

#[test]
fn acceptance_06_normal_form_soundness() {
    let c = Criterion::start("6 (normal-form soundness)", Some(Duration::from_secs(60)));
    for q in GRID_Q {
        let (a, b) = build_rep(q, 1).unwrap();
        let id = Mat2::identity(a.conductor());
        // ord(B) at k = 1; the rewriting normal form is a statement about
        // H(q;1), whose beta has this order under the faithful
        // representation.
        let mut ord_b = 1u64;
        let mut acc = b.clone();
        while acc != id {
            acc = acc.mul(&b);
            ord_b += 1;
        }
        assert_eq!(ord_b as i64, q * (q - 1));
        let mut b_pows = Vec::with_capacity(ord_b as usize);
        let mut m = id.clone();
        for _ in 0..ord_b {
            b_pows.push(m.clone());
            m = m.mul(&b);
        }
        let a_b_pows: Vec<Mat2> = b_pows.iter().map(|p| a.mul(p)).collect();

        // Depth-first over freely reduced words of length <= 8; these
        // represent every word of that length, since rep_eval and
        // normal_form both factor through free reduction.
        let letters = [(ALPHA, 1i64), (ALPHA, -1), (BETA, 1), (BETA, -1)];
        let mats = [a.clone(), a.inv().unwrap(), b.clone(), b.inv().unwrap()];
        let ord_big = BigInt::from(ord_b);
        let mut stack: Vec<(Vec<(Gen, i64)>, Mat2)> = vec![(Vec::new(), id.clone())];
        let mut checked = 0u64;
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
            assert_eq!(&mat, expected, "q={q} word {word}");
            debug_assert_eq!(&rep_eval(&word, &a, &b), expected);
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
        assert_eq!(checked, 13_121, "freely reduced words of length <= 8");
    }
    c.finish();
}

#[test]
fn acceptance_07_curve_polynomial_construction() {
    let c = Criterion::start("7 (curve polynomial construction)", None);
    let mut rng = ChaCha8Rng::seed_from_u64(0xF00D);
    let mut checked = 0;
    while checked < 50 {
        let p = rng.gen_range(2..=5i64);
        let q = rng.gen_range(2..=7i64);
        let m = rng.gen_range(2..=4i64);
        let k = rng.gen_range(1..=3i64);
        let l = rng.gen_range(1..=4i64);
        let Ok(params) = GroupParams::new(p, q, m, k, l) else {
            continue;
        };
        checked += 1;
        // build_f performs the exact division by s^m internally and fails
        // loudly if it is not exact.
        let f = build_f(&params).unwrap();
        let grading = curve_weights(&params);
        assert!(f.is_weighted_homogeneous(&grading), "params {params:?}");
        assert_eq!(
            f.weighted_degree(&grading).unwrap(),
            params.total_degree(),
            "params {params:?}"
        );
    }
    c.finish();
}

#[test]
fn acceptance_08_singularity_counts_desk_scale() {
    let c = Criterion::start("8 (singularity counts)", None);
    let budget_per_audit = Duration::from_secs(600);
    // C(3,1): N = 3, T = 6 across 3 seeds x 2 primes.
    for seed in [1u64, 2, 3] {
        for prime in DEFAULT_PRIMES {
            let t = Instant::now();
            let v = audit_with_resample(3, 1, seed, prime, MAX_RESAMPLES).unwrap();
            assert!(t.elapsed() <= budget_per_audit);
            assert!(v.pass, "C(3,1) seed {seed} prime {prime}");
            assert_eq!(v.audit.point_count, 3);
            assert_eq!(v.audit.tjurina_total, 6);
        }
    }
    // C(5,1): N = 7, T = 28 across 2 seeds x 2 primes.
    for seed in [1u64, 2] {
        for prime in DEFAULT_PRIMES {
            let t = Instant::now();
            let v = audit_with_resample(5, 1, seed, prime, MAX_RESAMPLES).unwrap();
            assert!(t.elapsed() <= budget_per_audit);
            assert!(v.pass, "C(5,1) seed {seed} prime {prime}");
            assert_eq!(v.audit.point_count, 7);
            assert_eq!(v.audit.tjurina_total, 28);
        }
    }
    c.finish();
}

#[test]
fn acceptance_09_zariski_quartic_fixture() {
    let c = Criterion::start("9 (three-cusp quartic fixture)", Some(Duration::from_secs(5)));
    let curve = zariski_quartic();
    for prime in DEFAULT_PRIMES {
        let audit = singularity_audit(&curve, prime, 2024).unwrap();
        assert_eq!(audit.point_count, 3, "prime {prime}");
        assert_eq!(audit.tjurina_total, 6, "prime {prime}");
    }
    c.finish();
}

#[test]
fn acceptance_10_genus_formulas() {
    let c = Criterion::start("10 (genus formulas)", None);
    assert_eq!(genus_theorem(3, 1), 0);
    assert_eq!(genus_theorem(5, 1), 7);
    for q in GRID_Q {
        let r = (q - 1) / 2;
        for k in GRID_K {
            let degree = 2 * (q - 1) * k;
            let n = (2 * q - 3) * k * k;
            assert_eq!(
                genus_theorem(q, k),
                genus_degree_oracle(degree, n, r),
                "theorem vs oracle at ({q},{k})"
            );
            assert_eq!(genus_general(q, k, k), genus_theorem(q, k));
        }
    }
    for q in [3i64, 5, 7] {
        let r = (q - 1) / 2;
        for k in 1..=3i64 {
            for l in k..=3i64 {
                let degree = 2 * q * l - 2 * k;
                let n = (2 * q * l - 3 * k) * l;
                assert_eq!(
                    genus_general(q, k, l),
                    genus_degree_oracle(degree, n, r),
                    "general vs oracle at ({q},{k},{l})"
                );
            }
        }
    }
    c.finish();
}
