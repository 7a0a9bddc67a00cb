//! Buchberger's algorithm over a prime field with the normal selection
//! strategy and both classical pair criteria, followed by interreduction to
//! the canonical reduced basis. Sized for bivariate/trivariate ideals of
//! moderate degree.

use std::collections::HashSet;

use super::multi::{Monomial, MultiPoly};
use super::ring::{Coeff, Fp};

/// Full normal form of `f` against `basis`: every term of the remainder is
/// reduced, not just the leading one. Deterministic: the first basis
/// element (in slice order) whose leading monomial divides the current
/// leading term is used.
pub fn poly_reduce(f: &MultiPoly<Fp>, basis: &[MultiPoly<Fp>]) -> MultiPoly<Fp> {
    let nvars = f.nvars();
    let mut rest = f.clone();
    let mut remainder = MultiPoly::zero(nvars);
    'outer: while let Some((lm, lc)) = rest.leading_term() {
        let lm = lm.clone();
        let lc = *lc;
        for g in basis {
            let Some((gm, gc)) = g.leading_term() else {
                continue;
            };
            if let Some(q) = lm.div(gm) {
                let factor = lc.mul(&gc.inv().expect("nonzero leading coefficient"));
                rest = rest.sub(&g.mul_term(&q, &factor));
                continue 'outer;
            }
        }
        // Irreducible leading term: move it to the remainder.
        remainder = remainder.add(&MultiPoly::monomial(nvars, lm.0.clone(), lc));
        rest = rest.sub(&MultiPoly::monomial(nvars, lm.0, lc));
    }
    remainder
}

fn monic(f: &MultiPoly<Fp>) -> MultiPoly<Fp> {
    match f.leading_term() {
        None => f.clone(),
        Some((_, lc)) => f.scale(&lc.inv().expect("nonzero leading coefficient")),
    }
}

fn s_poly(f: &MultiPoly<Fp>, g: &MultiPoly<Fp>) -> MultiPoly<Fp> {
    let (fm, fc) = f.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let l = fm.lcm(gm);
    let uf = l.div(fm).expect("lcm divisible");
    let ug = l.div(gm).expect("lcm divisible");
    let a = f.mul_term(&uf, &fc.inv().expect("nonzero"));
    let b = g.mul_term(&ug, &gc.inv().expect("nonzero"));
    a.sub(&b)
}

/// Reduced Groebner basis with respect to the global grevlex order, sorted
/// by ascending leading monomial. The output is canonical, so it does not
/// depend on the order of the generators.
pub fn groebner(generators: &[MultiPoly<Fp>]) -> Vec<MultiPoly<Fp>> {
    let nonzero: Vec<MultiPoly<Fp>> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(monic)
        .collect();
    if nonzero.is_empty() {
        return Vec::new();
    }
    let mut basis = nonzero;
    let mut processed: HashSet<(usize, usize)> = HashSet::new();
    let mut pending: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pending.push((i, j));
        }
    }

    while !pending.is_empty() {
        // Normal selection: smallest lcm in the term order, ties by index.
        let best = pending
            .iter()
            .enumerate()
            .min_by(|(_, &(i1, j1)), (_, &(i2, j2))| {
                let l1 = lead(&basis[i1]).lcm(lead(&basis[j1]));
                let l2 = lead(&basis[i2]).lcm(lead(&basis[j2]));
                l1.cmp(&l2).then((i1, j1).cmp(&(i2, j2)))
            })
            .map(|(idx, _)| idx)
            .expect("nonempty pending");
        let (i, j) = pending.swap_remove(best);
        processed.insert((i, j));

        let li = lead(&basis[i]);
        let lj = lead(&basis[j]);
        let l = li.lcm(lj);

        // Product criterion: coprime leading monomials reduce to zero.
        if li.mul(lj) == l {
            continue;
        }
        // Chain criterion: a third element whose lead divides the lcm and
        // whose pairs with i and j were already handled.
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lead(&basis[k]).divides(&l)
                && processed.contains(&key(i, k))
                && processed.contains(&key(j, k))
        });
        if chained {
            continue;
        }

        let s = s_poly(&basis[i], &basis[j]);
        let reduced = poly_reduce(&s, &basis);
        if reduced.is_zero() {
            continue;
        }
        let reduced = monic(&reduced);
        let new_idx = basis.len();
        basis.push(reduced);
        for t in 0..new_idx {
            pending.push((t, new_idx));
        }
    }

    interreduce(basis)
}

fn lead(f: &MultiPoly<Fp>) -> &Monomial {
    f.leading_term().expect("basis elements are nonzero").0
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Minimalizes (drops elements whose lead is divisible by another lead) and
/// fully reduces each survivor against the others.
fn interreduce(mut basis: Vec<MultiPoly<Fp>>) -> Vec<MultiPoly<Fp>> {
    basis.sort_by(|a, b| lead(a).cmp(lead(b)));
    basis.dedup();
    let mut keep: Vec<MultiPoly<Fp>> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let lg = lead(g);
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(j, h)| j != idx && lead(h).divides(lg) && (lead(h) != lg || j < idx));
        if !redundant {
            keep.push(g.clone());
        }
    }
    loop {
        let mut changed = false;
        for i in 0..keep.len() {
            let others: Vec<MultiPoly<Fp>> = keep
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, h)| h.clone())
                .collect();
            let reduced = monic(&poly_reduce(&keep[i], &others));
            if reduced != keep[i] {
                keep[i] = reduced;
                changed = true;
            }
        }
        keep.retain(|g| !g.is_zero());
        if !changed {
            break;
        }
    }
    keep.sort_by(|a, b| lead(a).cmp(lead(b)));
    keep
}

/// Dimension of the quotient algebra read off a reduced Groebner basis: the
/// number of standard monomials under the leading-term staircase.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QuotientDim {
    Finite(usize),
    Infinite,
}

pub fn quotient_dimension(basis: &[MultiPoly<Fp>]) -> QuotientDim {
    let Some(nvars) = basis.first().map(MultiPoly::nvars) else {
        return QuotientDim::Infinite; // empty ideal, full polynomial ring
    };
    let leads: Vec<&Monomial> = basis.iter().filter_map(|g| g.leading_term().map(|t| t.0)).collect();
    if leads.iter().any(|m| m.is_unit()) {
        return QuotientDim::Finite(0);
    }
    // Zero-dimensional iff each variable has a pure power among the leads.
    let mut bound = vec![0u32; nvars];
    for (v, slot) in bound.iter_mut().enumerate() {
        let pure = leads
            .iter()
            .filter(|m| m.0.iter().enumerate().all(|(i, &e)| i == v || e == 0))
            .map(|m| m.0[v])
            .min();
        match pure {
            Some(d) => *slot = d,
            None => return QuotientDim::Infinite,
        }
    }
    let mut count = 0usize;
    let mut exps = vec![0u32; nvars];
    loop {
        let mono = Monomial(exps.clone());
        if !leads.iter().any(|m| m.divides(&mono)) {
            count += 1;
        }
        // Odometer over the box of candidate exponents.
        let mut v = 0;
        loop {
            if v == nvars {
                return QuotientDim::Finite(count);
            }
            exps[v] += 1;
            if exps[v] < bound[v] {
                break;
            }
            exps[v] = 0;
            v += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ring::PrimeField;
    use crate::poly::text::parse_fp_poly;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    const P: u64 = 2_147_483_647;

    fn fld() -> PrimeField {
        PrimeField::new(P).unwrap()
    }

    fn polys(texts: &[&str], names: &[&str]) -> Vec<MultiPoly<Fp>> {
        let field = fld();
        texts
            .iter()
            .map(|t| parse_fp_poly(t, names, &field).unwrap())
            .collect()
    }

    #[test]
    fn already_reduced_bases_are_fixed() {
        let gens = polys(&["x^2", "y^2"], &["x", "y"]);
        let gb = groebner(&gens);
        // Same basis, in the canonical order (ascending leading monomial).
        let mut expected = gens.clone();
        expected.reverse(); // y^2 < x^2 in grevlex
        assert_eq!(gb, expected);
        // Feeding the output back in is a fixed point.
        assert_eq!(groebner(&gb), gb);
    }

    #[test]
    fn staircase_of_x2_minus_y_and_y2() {
        let gens = polys(&["x^2 - y", "y^2"], &["x", "y"]);
        let gb = groebner(&gens);
        assert_eq!(quotient_dimension(&gb), QuotientDim::Finite(4));
    }

    #[test]
    fn inconsistent_system_collapses_to_one() {
        let gens = polys(&["x", "x - 1"], &["x", "y"]);
        let gb = groebner(&gens);
        assert_eq!(gb.len(), 1);
        assert!(gb[0].leading_term().unwrap().0.is_unit());
        assert_eq!(quotient_dimension(&gb), QuotientDim::Finite(0));
    }

    #[test]
    fn quotient_dimension_examples() {
        let gens = polys(&["x^2", "y^2"], &["x", "y"]);
        assert_eq!(quotient_dimension(&groebner(&gens)), QuotientDim::Finite(4));
        let just_x = polys(&["x"], &["x", "y"]);
        assert_eq!(quotient_dimension(&groebner(&just_x)), QuotientDim::Infinite);
    }

    #[test]
    fn basis_is_independent_of_generator_order() {
        let names = ["x", "y"];
        let sets = [
            vec!["x^2 + y", "x*y - 1", "y^3 + 2"],
            vec!["y^3 + 2", "x^2 + y", "x*y - 1"],
            vec!["x*y - 1", "y^3 + 2", "x^2 + y"],
        ];
        let mut bases = sets.iter().map(|s| groebner(&polys(s, &names)));
        let first = bases.next().unwrap();
        for b in bases {
            assert_eq!(b, first);
        }
    }

    #[test]
    fn two_point_intersection_has_dimension_two() {
        // (x + y, x*y - 1) cuts out two points.
        let gb = groebner(&polys(&["x + y", "x*y - 1"], &["x", "y"]));
        assert_eq!(quotient_dimension(&gb), QuotientDim::Finite(2));
    }

    /// Macaulay-style brute force: dimension of R_{<=d} / span of all
    /// generator multiples of degree <= d, for d large enough to stabilize.
    fn macaulay_dimension(gens: &[MultiPoly<Fp>], degree: u32) -> usize {
        let field = fld();
        let nvars = gens[0].nvars();
        let monos = monomials_up_to(nvars, degree);
        let index: std::collections::HashMap<Vec<u32>, usize> = monos
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut rows: Vec<Vec<Fp>> = Vec::new();
        for g in gens {
            let gdeg = g.total_degree().unwrap() as u32;
            for m in monomials_up_to(nvars, degree.saturating_sub(gdeg)) {
                let shifted = g.mul_term(&Monomial(m.clone()), &field.one());
                let mut row = vec![field.zero(); monos.len()];
                for (mono, c) in shifted.terms() {
                    row[index[&mono.0]] = *c;
                }
                rows.push(row);
            }
        }
        let rank = row_rank(&mut rows);
        monos.len() - rank
    }

    fn monomials_up_to(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut current = vec![0u32; nvars];
        loop {
            if current.iter().sum::<u32>() <= degree {
                out.push(current.clone());
            }
            let mut v = 0;
            loop {
                if v == nvars {
                    out.sort();
                    return out;
                }
                current[v] += 1;
                if current.iter().sum::<u32>() <= degree {
                    break;
                }
                current[v] = 0;
                v += 1;
            }
        }
    }

    fn row_rank(rows: &mut [Vec<Fp>]) -> usize {
        if rows.is_empty() {
            return 0;
        }
        let cols = rows[0].len();
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = rows[rank][col].inv().unwrap();
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && !row[col].is_zero() {
                    let factor = row[col].mul(&inv);
                    for (dst, src) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                        let t = src.mul(&factor);
                        *dst = dst.sub(&t);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn quotient_dimension_matches_macaulay_bruteforce() {
        let mut rng = StdRng::seed_from_u64(5);
        let field = fld();
        let mut tested = 0;
        while tested < 8 {
            // Random pairs of quadratics/cubics in two variables.
            let mut gens = Vec::new();
            for _ in 0..2 {
                let deg = rng.gen_range(2..=3u32);
                let mut g = MultiPoly::zero(2);
                for a in 0..=deg {
                    for b in 0..=(deg - a) {
                        let c = field.element(rng.gen_range(-9..=9));
                        g = g.add(&MultiPoly::monomial(2, vec![a, b], c));
                    }
                }
                if g.is_zero() {
                    g = MultiPoly::constant(2, field.one());
                }
                gens.push(g);
            }
            let gb = groebner(&gens);
            let QuotientDim::Finite(dim) = quotient_dimension(&gb) else {
                continue; // not zero-dimensional; resample
            };
            tested += 1;
            // Stabilized Macaulay dimension at two consecutive degrees.
            let d = 9;
            let m1 = macaulay_dimension(&gens, d);
            let m2 = macaulay_dimension(&gens, d + 1);
            assert_eq!(m1, m2, "Macaulay dimension did not stabilize");
            assert_eq!(dim, m1);
        }
    }
}
