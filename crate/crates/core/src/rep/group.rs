//! Generator matrices for `H(q;k)`, breadth-first closure of the group they
//! generate, and the central-extension structure of that group.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::cyclo::{CycNumber, CycPhase};
use crate::word::{Gen, Word};

use super::matrix::Mat2;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RepError {
    #[error("q must be odd and >= 3 (got {0})")]
    QNotOdd(i64),
    #[error("k must be positive (got {0})")]
    KNotPositive(i64),
    #[error("closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
}

/// The two generator matrices, exact over the conductor `N = 4rkq`:
///
/// `A = [[0, e(q/4rk)], [e(q/4rk), 0]]`,
/// `B = diag(e(1/2rk + r/q), e(1/2rk - r/q))` with `r = (q-1)/2`.
pub fn build_rep(q: i64, k: i64) -> Result<(Mat2, Mat2), RepError> {
    if q < 3 || q % 2 == 0 {
        return Err(RepError::QNotOdd(q));
    }
    if k < 1 {
        return Err(RepError::KNotPositive(k));
    }
    let r = (q - 1) / 2;
    let n = (4 * r * k * q) as u64;
    let w = CycNumber::root_of_unity(CycPhase::new(q, (4 * r * k) as u64), n)
        .expect("4rk divides 4rkq");
    let b_plus = CycNumber::root_of_unity(
        CycPhase::new(q + 2 * r * r * k, (2 * r * k * q) as u64),
        n,
    )
    .expect("2rkq divides 4rkq");
    let b_minus = CycNumber::root_of_unity(
        CycPhase::new(q - 2 * r * r * k, (2 * r * k * q) as u64),
        n,
    )
    .expect("2rkq divides 4rkq");
    let zero = CycNumber::zero(n);
    let a = Mat2::new([zero.clone(), w.clone(), w, zero.clone()]);
    let b = Mat2::new([b_plus, zero.clone(), zero, b_minus]);
    Ok((a, b))
}

/// The central scalar `c = e(1/2rk)` over the same conductor as `build_rep`.
pub fn central_scalar(q: i64, k: i64) -> Result<CycNumber, RepError> {
    if q < 3 || q % 2 == 0 {
        return Err(RepError::QNotOdd(q));
    }
    if k < 1 {
        return Err(RepError::KNotPositive(k));
    }
    let r = (q - 1) / 2;
    let n = (4 * r * k * q) as u64;
    Ok(CycNumber::root_of_unity(CycPhase::new(1, (2 * r * k) as u64), n).expect("2rk divides 4rkq"))
}

/// Exact checks of the three defining matrix identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    /// `A^2 = B^q`
    pub square_relation: bool,
    /// `B^{qk} = (B^{-r} A)^{2k}`
    pub power_relation: bool,
    /// `(B^{-r} A)^2 = e(1/2rk) I`
    pub central_relation: bool,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.square_relation && self.power_relation && self.central_relation
    }
}

pub fn verify_relations(a: &Mat2, b: &Mat2, q: i64, k: i64) -> Result<RelationReport, RepError> {
    if q < 3 || q % 2 == 0 {
        return Err(RepError::QNotOdd(q));
    }
    if k < 1 {
        return Err(RepError::KNotPositive(k));
    }
    let r = (q - 1) / 2;
    let half_turn = b.pow(-r).expect("diagonal root of unity").mul(a);
    let square_relation = a.pow(2).expect("pow") == b.pow(q).expect("pow");
    let power_relation = b.pow(q * k).expect("pow") == half_turn.pow(2 * k).expect("pow");
    let central = Mat2::identity(a.conductor()).scalar_mul(&central_scalar(q, k)?);
    let central_relation = half_turn.pow(2).expect("pow") == central;
    Ok(RelationReport {
        square_relation,
        power_relation,
        central_relation,
    })
}

/// Image of a word under `a -> A`, `b -> B` (and generator i to
/// `gens[i]` in general).
pub fn rep_eval(word: &Word, a: &Mat2, b: &Mat2) -> Mat2 {
    let gens = [a.clone(), b.clone()];
    eval_in(word, &gens)
}

fn eval_in(word: &Word, gens: &[Mat2]) -> Mat2 {
    let conductor = gens
        .first()
        .map(Mat2::conductor)
        .expect("at least one generator");
    let mut out = Mat2::identity(conductor);
    for &(g, e) in word.letters() {
        let img = gens[g.0 as usize].pow(e).expect("invertible generator");
        out = out.mul(&img);
    }
    out
}

/// A finite matrix group listed in closure (BFS) order, with one witness
/// word per element.
#[derive(Debug)]
pub struct MatrixGroup {
    elements: Vec<Mat2>,
    witnesses: Vec<Word>,
    index: HashMap<Mat2, usize>,
    generators: Vec<Mat2>,
}

impl MatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elements
    }

    pub fn witnesses(&self) -> &[Word] {
        &self.witnesses
    }

    pub fn generators(&self) -> &[Mat2] {
        &self.generators
    }

    pub fn contains(&self, m: &Mat2) -> bool {
        self.index.contains_key(m)
    }
}

/// Breadth-first closure of the generated group under products with the
/// generators and their inverses. Deterministic: elements are recorded in
/// first-touch order.
pub fn closure(generators: &[Mat2], cap: usize) -> Result<MatrixGroup, RepError> {
    let conductor = generators
        .first()
        .map(Mat2::conductor)
        .expect("at least one generator");
    let mut steps: Vec<(Mat2, Word)> = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        let gen = Gen(i as u32);
        steps.push((g.clone(), Word::generator(gen)));
        steps.push((
            g.inv().expect("invertible generator"),
            Word::generator_power(gen, -1),
        ));
    }

    let identity = Mat2::identity(conductor);
    let mut elements = vec![identity.clone()];
    let mut witnesses = vec![Word::identity()];
    let mut index = HashMap::new();
    index.insert(identity, 0usize);

    let mut head = 0;
    while head < elements.len() {
        let current = elements[head].clone();
        let current_word = witnesses[head].clone();
        head += 1;
        for (g, letter) in &steps {
            let next = current.mul(g);
            if index.contains_key(&next) {
                continue;
            }
            if elements.len() + 1 > cap {
                return Err(RepError::CapExceeded { cap });
            }
            index.insert(next.clone(), elements.len());
            elements.push(next);
            witnesses.push(current_word.multiply(letter));
        }
    }
    Ok(MatrixGroup {
        elements,
        witnesses,
        index,
        generators: generators.to_vec(),
    })
}

/// How the closed group sits between its scalar subgroup and its projective
/// image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    pub scalar_subgroup_order: usize,
    pub pgl_image_order: usize,
    pub pgl_image_is_dihedral: bool,
    pub scalar_subgroup_is_central: bool,
}

/// Counts the scalar subgroup exactly, computes the projective image by
/// identifying matrices up to scalar, and searches that image for dihedral
/// generators `s, t` with `s^2 = t^q = 1`, `s t s^-1 = t^-1`.
pub fn extension_structure(group: &MatrixGroup, q: i64) -> ExtensionReport {
    let scalars: Vec<&Mat2> = group
        .elements()
        .iter()
        .filter(|m| m.as_scalar().is_some())
        .collect();

    let scalar_subgroup_is_central = scalars.iter().all(|s| {
        group
            .generators()
            .iter()
            .all(|g| s.mul(g) == g.mul(s))
    });

    // Projective image, first-touch order.
    let mut pgl: Vec<Mat2> = Vec::new();
    let mut seen: HashMap<Mat2, usize> = HashMap::new();
    for m in group.elements() {
        let p = m.projective_normalize();
        if !seen.contains_key(&p) {
            seen.insert(p.clone(), pgl.len());
            pgl.push(p);
        }
    }

    let identity = Mat2::identity(
        group
            .generators()
            .first()
            .map(Mat2::conductor)
            .expect("nonempty generators"),
    )
    .projective_normalize();
    let pgl_mul = |x: &Mat2, y: &Mat2| x.mul(y).projective_normalize();
    let pgl_order_of = |x: &Mat2| -> usize {
        let mut acc = x.clone();
        let mut n = 1;
        while acc != identity {
            acc = pgl_mul(&acc, x);
            n += 1;
        }
        n
    };

    let mut pgl_image_is_dihedral = false;
    if pgl.len() == 2 * q as usize {
        let rotations: Vec<&Mat2> = pgl
            .iter()
            .filter(|m| pgl_order_of(m) as i64 == q)
            .collect();
        'search: for t in &rotations {
            // Powers of t, to keep s outside the rotation subgroup.
            let mut powers = vec![identity.clone()];
            let mut acc = (*t).clone();
            while acc != identity {
                powers.push(acc.clone());
                acc = pgl_mul(&acc, t);
            }
            let t_inv = t.inv().expect("invertible").projective_normalize();
            for s in &pgl {
                if pgl_order_of(s) != 2 || powers.contains(s) {
                    continue;
                }
                let s_inv = s.inv().expect("invertible").projective_normalize();
                let conj = pgl_mul(&pgl_mul(s, t), &s_inv);
                if conj == t_inv {
                    pgl_image_is_dihedral = true;
                    break 'search;
                }
            }
        }
    }

    ExtensionReport {
        scalar_subgroup_order: scalars.len(),
        pgl_image_order: pgl.len(),
        pgl_image_is_dihedral,
        scalar_subgroup_is_central,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycPhase;
    use crate::presentation::presentation_h;

    fn e(a: i64, b: u64, n: u64) -> CycNumber {
        CycNumber::root_of_unity(CycPhase::new(a, b), n).unwrap()
    }

    #[test]
    fn generators_for_3_1_match_the_display() {
        let (a, b) = build_rep(3, 1).unwrap();
        assert_eq!(a.conductor(), 12);
        let w = e(3, 4, 12);
        assert_eq!(a.entries()[0], CycNumber::zero(12));
        assert_eq!(a.entries()[1], w);
        assert_eq!(a.entries()[2], w);
        assert_eq!(b.entries()[0], e(5, 6, 12));
        assert_eq!(b.entries()[3], e(1, 6, 12));
    }

    #[test]
    fn a_squared_is_minus_identity_at_3_1() {
        let (a, _) = build_rep(3, 1).unwrap();
        let minus_id = Mat2::identity(12).scalar_mul(&e(1, 2, 12));
        assert_eq!(a.pow(2).unwrap(), minus_id);
    }

    #[test]
    fn half_turn_square_is_minus_identity_at_3_1() {
        let (a, b) = build_rep(3, 1).unwrap();
        let half_turn = b.pow(-1).unwrap().mul(&a);
        let minus_id = Mat2::identity(12).scalar_mul(&e(1, 2, 12));
        assert_eq!(half_turn.pow(2).unwrap(), minus_id);
    }

    #[test]
    fn relations_hold_at_3_1_and_5_2() {
        for (q, k) in [(3, 1), (5, 2)] {
            let (a, b) = build_rep(q, k).unwrap();
            let report = verify_relations(&a, &b, q, k).unwrap();
            assert!(report.all_hold(), "relations at ({q},{k}): {report:?}");
        }
    }

    #[test]
    fn tampered_generator_fails_the_first_relation() {
        let (a, b) = build_rep(3, 1).unwrap();
        let tampered = Mat2::new([
            a.entries()[0].clone(),
            a.entries()[1].neg(),
            a.entries()[2].clone(),
            a.entries()[3].clone(),
        ]);
        let report = verify_relations(&tampered, &b, 3, 1).unwrap();
        assert!(!report.square_relation);
    }

    #[test]
    fn closure_orders() {
        let (a, b) = build_rep(3, 1).unwrap();
        assert_eq!(closure(&[a, b], 10_000).unwrap().order(), 12);
        let (a, b) = build_rep(5, 1).unwrap();
        assert_eq!(closure(&[a, b], 10_000).unwrap().order(), 40);
    }

    #[test]
    fn closure_of_identity_is_trivial() {
        let id = Mat2::identity(12);
        assert_eq!(closure(&[id], 10).unwrap().order(), 1);
    }

    #[test]
    fn closure_cap_is_enforced() {
        let (a, b) = build_rep(5, 1).unwrap();
        let err = closure(&[a, b], 10).unwrap_err();
        assert_eq!(err, RepError::CapExceeded { cap: 10 });
    }

    #[test]
    fn rep_eval_examples() {
        let (a, b) = build_rep(3, 1).unwrap();
        assert_eq!(
            rep_eval(&Word::identity(), &a, &b),
            Mat2::identity(12)
        );
        let minus_id = Mat2::identity(12).scalar_mul(&e(1, 2, 12));
        assert_eq!(rep_eval(&Word::parse("a^2").unwrap(), &a, &b), minus_id);
        // The quotient relator evaluates to the identity.
        let relator = Word::parse("b^3 a^-1 b a^-1 b").unwrap();
        assert_eq!(rep_eval(&relator, &a, &b), Mat2::identity(12));
    }

    #[test]
    fn all_h_relators_die_in_the_representation() {
        for (q, k) in [(3i64, 1i64), (5, 1), (5, 2), (7, 1)] {
            let (a, b) = build_rep(q, k).unwrap();
            for rel in presentation_h(q, k).unwrap().relators() {
                assert_eq!(
                    rep_eval(rel, &a, &b),
                    Mat2::identity(a.conductor()),
                    "relator {rel} at ({q},{k})"
                );
            }
        }
    }

    #[test]
    fn extension_structure_examples() {
        for (q, k, scalars, pgl) in [(3i64, 1i64, 2, 6), (5, 1, 4, 10), (5, 2, 8, 10)] {
            let (a, b) = build_rep(q, k).unwrap();
            let group = closure(&[a, b], 10_000).unwrap();
            let ext = extension_structure(&group, q);
            assert_eq!(ext.scalar_subgroup_order, scalars, "scalars at ({q},{k})");
            assert_eq!(ext.pgl_image_order, pgl, "pgl at ({q},{k})");
            assert!(ext.pgl_image_is_dihedral, "dihedral at ({q},{k})");
            assert!(ext.scalar_subgroup_is_central);
        }
    }

    #[test]
    fn scalar_subgroup_is_generated_by_the_central_square() {
        for (q, k) in [(3i64, 1i64), (5, 2)] {
            let r = (q - 1) / 2;
            let (a, b) = build_rep(q, k).unwrap();
            let group = closure(&[a.clone(), b.clone()], 10_000).unwrap();
            let half_turn_sq = b.pow(-r).unwrap().mul(&a).pow(2).unwrap();
            let c = central_scalar(q, k).unwrap();
            assert_eq!(
                half_turn_sq,
                Mat2::identity(a.conductor()).scalar_mul(&c)
            );
            assert_eq!(c.multiplicative_order().unwrap(), (2 * r * k) as u64);
            let mut generated = Vec::new();
            let mut acc = Mat2::identity(a.conductor());
            loop {
                generated.push(acc.clone());
                acc = acc.mul(&half_turn_sq);
                if acc == Mat2::identity(a.conductor()) {
                    break;
                }
            }
            let scalars: Vec<&Mat2> = group
                .elements()
                .iter()
                .filter(|m| m.as_scalar().is_some())
                .collect();
            assert_eq!(generated.len(), scalars.len());
            for g in &generated {
                assert!(scalars.contains(&g));
            }
        }
    }
}
