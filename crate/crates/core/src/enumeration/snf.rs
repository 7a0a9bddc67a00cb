//! Smith normal form over the integers and the abelianization of a
//! presentation via its relator exponent-sum matrix.
//!
//! All arithmetic is arbitrary precision: intermediate entries grow well
//! past machine words even for small inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::presentation::Presentation;
use crate::word::Gen;

/// Dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = v.clone().into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let t = f * &self[(src, j)];
            self[(dst, j)] += t;
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let t = f * &self[(i, src)];
            self[(i, dst)] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// `left * m * right = diag`, with the diagonal in divisibility order.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

/// Computes the Smith normal form by pivoting with explicit gcd reduction.
/// Returned diagonal entries are nonnegative with `d1 | d2 | ...`.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let mut b = m.clone();
    let mut left = IntMatrix::identity(m.rows());
    let mut right = IntMatrix::identity(m.cols());
    let n = m.rows().min(m.cols());
    let mut k = 0;

    while k < n {
        let Some((pi, pj)) = smallest_pivot(&b, k) else {
            break;
        };
        b.swap_rows(k, pi);
        left.swap_rows(k, pi);
        b.swap_cols(k, pj);
        right.swap_cols(k, pj);

        loop {
            // Clear column k below the pivot by floor division; a nonzero
            // remainder becomes the new, strictly smaller pivot.
            let mut dirty = false;
            for i in (k + 1)..b.rows() {
                if b[(i, k)].is_zero() {
                    continue;
                }
                let q = b[(i, k)].div_floor(&b[(k, k)]);
                let nq = -q;
                b.add_row(i, k, &nq);
                left.add_row(i, k, &nq);
                if !b[(i, k)].is_zero() {
                    b.swap_rows(k, i);
                    left.swap_rows(k, i);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            for j in (k + 1)..b.cols() {
                if b[(k, j)].is_zero() {
                    continue;
                }
                let q = b[(k, j)].div_floor(&b[(k, k)]);
                let nq = -q;
                b.add_col(j, k, &nq);
                right.add_col(j, k, &nq);
                if !b[(k, j)].is_zero() {
                    b.swap_cols(k, j);
                    right.swap_cols(k, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Divisibility fix-up: fold a violating row into row k and redo.
            let mut violated = false;
            'outer: for i in (k + 1)..b.rows() {
                for j in (k + 1)..b.cols() {
                    if !b[(i, j)].mod_floor(&b[(k, k)]).is_zero() {
                        let one = BigInt::one();
                        b.add_row(k, i, &one);
                        left.add_row(k, i, &one);
                        violated = true;
                        break 'outer;
                    }
                }
            }
            if !violated {
                break;
            }
        }
        if b[(k, k)].is_negative() {
            b.negate_row(k);
            left.negate_row(k);
        }
        k += 1;
    }

    let rank = k;
    let diagonal: Vec<BigInt> = (0..n).map(|i| b[(i, i)].clone()).collect();
    SmithDecomposition {
        diagonal,
        rank,
        left,
        right,
    }
}

/// Nonzero entry of smallest absolute value in the trailing block, first in
/// row-major order on ties.
fn smallest_pivot(b: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..b.rows() {
        for j in k..b.cols() {
            if b[(i, j)].is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if b[(bi, bj)].abs() <= b[(i, j)].abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Invariant factors (each > 1, in divisibility order) and free rank of the
/// abelianized group of a presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianStructure {
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianStructure {
    /// True when the group is cyclic of the given finite order.
    pub fn is_cyclic_of_order(&self, order: u64) -> bool {
        self.free_rank == 0
            && match order {
                1 => self.invariant_factors.is_empty(),
                n => self.invariant_factors == vec![BigInt::from(n)],
            }
    }
}

/// Exponent-sum matrix of the relators (one row per relator).
pub fn relation_matrix(pres: &Presentation) -> IntMatrix {
    let gens = pres.generator_count();
    let mut m = IntMatrix::zero(pres.relators().len(), gens);
    for (i, rel) in pres.relators().iter().enumerate() {
        for g in 0..gens {
            m[(i, g)] = BigInt::from(rel.exponent_sum(Gen(g as u32)));
        }
    }
    m
}

/// Abelianization via Smith normal form of the relation matrix.
pub fn abelianization(pres: &Presentation) -> AbelianStructure {
    let m = relation_matrix(pres);
    if m.rows() == 0 {
        return AbelianStructure {
            invariant_factors: Vec::new(),
            free_rank: pres.generator_count(),
        };
    }
    let snf = smith_normal_form(&m);
    let invariant_factors = snf
        .diagonal
        .iter()
        .filter(|d| d.abs() > BigInt::one())
        .cloned()
        .collect();
    AbelianStructure {
        invariant_factors,
        free_rank: pres.generator_count() - snf.rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{presentation_g, presentation_h, Presentation};

    fn diag_of(rows: &[Vec<i64>]) -> Vec<i64> {
        let m = IntMatrix::from_rows(rows);
        let snf = smith_normal_form(&m);
        check_transforms(&m, &snf);
        snf.diagonal
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    /// Re-multiplication oracle: left * m * right must equal the diagonal.
    fn check_transforms(m: &IntMatrix, snf: &SmithDecomposition) {
        let prod = snf.left.mul(m).mul(&snf.right);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let expect = if i == j && i < snf.diagonal.len() {
                    snf.diagonal[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(prod[(i, j)], expect, "at ({i},{j})");
            }
        }
    }

    #[test]
    fn diag_2_3_collapses_to_1_6() {
        assert_eq!(diag_of(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }

    #[test]
    fn zero_matrix_stays_zero() {
        assert_eq!(diag_of(&[vec![0, 0], vec![0, 0]]), vec![0, 0]);
    }

    #[test]
    fn identity_is_fixed() {
        assert_eq!(
            diag_of(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
            vec![1, 1, 1]
        );
    }

    #[test]
    fn divisibility_chain_holds() {
        let d = diag_of(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        for w in d.windows(2) {
            if w[1] != 0 {
                assert_eq!(w[1] % w[0], 0, "chain {d:?}");
            }
        }
    }

    #[test]
    fn known_4x4_case() {
        // Same fixture used by several SNF references.
        let d = diag_of(&[
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]);
        assert_eq!(d, vec![1, 3, 21, 0]);
    }

    /// Minor-gcd oracle: d1*...*di equals the gcd of all i x i minors.
    #[test]
    fn minors_gcd_is_preserved() {
        let fixtures: [[[i64; 4]; 4]; 3] = [
            [[2, 3, 5, 7], [1, 0, -4, 2], [6, 6, 6, 6], [0, -2, 8, 3]],
            [[1, 2, 3, 4], [5, 6, 7, 8], [9, 10, 11, 12], [13, 14, 15, 16]],
            [[4, 0, 0, 0], [0, 6, 0, 0], [0, 0, 10, 0], [0, 0, 0, 0]],
        ];
        for rows in fixtures {
            let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
            let m = IntMatrix::from_rows(&rows);
            let snf = smith_normal_form(&m);
            for size in 1..=snf.rank {
                let g = minor_gcd(&m, size);
                let mut prod = BigInt::one();
                for d in &snf.diagonal[..size] {
                    prod *= d;
                }
                assert_eq!(g, prod, "size {size} of {rows:?}");
            }
        }
    }

    fn minor_gcd(m: &IntMatrix, size: usize) -> BigInt {
        let rows: Vec<usize> = (0..m.rows()).collect();
        let cols: Vec<usize> = (0..m.cols()).collect();
        let mut g = BigInt::zero();
        for rs in combinations(&rows, size) {
            for cs in combinations(&cols, size) {
                let d = determinant(m, &rs, &cs);
                g = g.gcd(&d);
            }
        }
        g
    }

    fn combinations(items: &[usize], size: usize) -> Vec<Vec<usize>> {
        if size == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for (i, &x) in items.iter().enumerate() {
            for mut rest in combinations(&items[i + 1..], size - 1) {
                rest.insert(0, x);
                out.push(rest);
            }
        }
        out
    }

    fn determinant(m: &IntMatrix, rs: &[usize], cs: &[usize]) -> BigInt {
        if rs.len() == 1 {
            return m[(rs[0], cs[0])].clone();
        }
        let mut det = BigInt::zero();
        for (idx, &c) in cs.iter().enumerate() {
            let sub_cs: Vec<usize> = cs.iter().copied().filter(|&x| x != c).collect();
            let minor = determinant(m, &rs[1..], &sub_cs);
            let term = &m[(rs[0], c)] * minor;
            if idx % 2 == 0 {
                det += term;
            } else {
                det -= term;
            }
        }
        det
    }

    #[test]
    fn h_3_1_abelianizes_to_z4() {
        let ab = abelianization(&presentation_h(3, 1).unwrap());
        assert_eq!(ab.invariant_factors, vec![BigInt::from(4)]);
        assert_eq!(ab.free_rank, 0);
        assert!(ab.is_cyclic_of_order(4));
    }

    #[test]
    fn g_2_3_abelianizes_to_z() {
        let ab = abelianization(&presentation_g(2, 3).unwrap());
        assert!(ab.invariant_factors.is_empty());
        assert_eq!(ab.free_rank, 1);
    }

    #[test]
    fn free_group_abelianizes_freely() {
        let pres = Presentation::new(2, vec![]).unwrap();
        let ab = abelianization(&pres);
        assert!(ab.invariant_factors.is_empty());
        assert_eq!(ab.free_rank, 2);
    }

    #[test]
    fn h_grid_abelianization_is_cyclic_of_curve_degree() {
        for q in [3i64, 5, 7, 9] {
            for k in [1i64, 2, 3] {
                let ab = abelianization(&presentation_h(q, k).unwrap());
                let degree = 2 * (q - 1) * k;
                assert!(
                    ab.is_cyclic_of_order(degree as u64),
                    "q={q} k={k}: got {ab:?}, want Z/{degree}"
                );
            }
        }
    }
}
