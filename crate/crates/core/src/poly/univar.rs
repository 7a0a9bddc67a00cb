//! Dense univariate polynomials over a prime field: Euclidean arithmetic,
//! Sylvester resultants, squarefree parts, and the bivariate eliminant used
//! by the singularity audit (resultant of two bivariate polynomials in one
//! variable, computed by evaluation and Lagrange interpolation; each
//! evaluation is a literal Sylvester determinant).

use super::multi::MultiPoly;
use super::ring::{Coeff, Fp, PrimeField};

/// `coeffs[i]` is the coefficient of `x^i`; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    field: PrimeField,
    coeffs: Vec<Fp>,
}

impl UniPoly {
    pub fn new(field: PrimeField, mut coeffs: Vec<Fp>) -> UniPoly {
        while coeffs.last().is_some_and(Fp::is_zero) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: PrimeField) -> UniPoly {
        UniPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn from_ints(field: PrimeField, ints: &[i64]) -> UniPoly {
        UniPoly::new(field, ints.iter().map(|&v| field.element(v)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Fp] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<Fp> {
        self.coeffs.last().copied()
    }

    pub fn eval(&self, x: Fp) -> Fp {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&x).add(c);
        }
        acc
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![self.field.zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = out[i].add(c);
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] = out[i].add(c);
        }
        UniPoly::new(self.field, out)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.scale(&self.field.element(-1)))
    }

    pub fn scale(&self, c: &Fp) -> UniPoly {
        UniPoly::new(
            self.field,
            self.coeffs.iter().map(|a| a.mul(c)).collect(),
        )
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UniPoly::new(self.field, out)
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn divrem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.leading().unwrap().inv().expect("prime field");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(self.field), self.clone());
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c;
            for j in 0..=dd {
                let t = c.mul(&divisor.coeffs[j]);
                rem[i - dd + j] = rem[i - dd + j].sub(&t);
            }
        }
        (UniPoly::new(self.field, quot), UniPoly::new(self.field, rem))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero(self.field);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| {
                let mut acc = self.field.zero();
                for _ in 0..i {
                    acc = acc.add(c);
                }
                acc
            })
            .collect();
        UniPoly::new(self.field, out)
    }

    /// `f / gcd(f, f')`: same roots, multiplicity one. Valid here because
    /// the audit primes vastly exceed every degree in play.
    pub fn squarefree_part(&self) -> UniPoly {
        assert!(!self.is_zero(), "squarefree part of zero");
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        let (q, r) = self.divrem(&g);
        debug_assert!(r.is_zero());
        q
    }
}

/// Resultant of two univariate polynomials as the determinant of their
/// Sylvester matrix (Gaussian elimination over the field). By convention
/// `Res(c, g) = c^{deg g}` for constants and the resultant involving the
/// zero polynomial is 0 (1 when both inputs are nonzero constants).
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Fp {
    let field = f.field;
    if f.is_zero() || g.is_zero() {
        return field.zero();
    }
    let m = f.degree().unwrap();
    let n = g.degree().unwrap();
    if m == 0 {
        return pow_fp(f.leading().unwrap(), n as u64);
    }
    if n == 0 {
        return pow_fp(g.leading().unwrap(), m as u64);
    }
    let size = m + n;
    let mut mat = vec![vec![field.zero(); size]; size];
    for row in 0..n {
        for (j, c) in f.coeffs.iter().rev().enumerate() {
            mat[row][row + j] = *c;
        }
    }
    for row in 0..m {
        for (j, c) in g.coeffs.iter().rev().enumerate() {
            mat[n + row][row + j] = *c;
        }
    }
    determinant(field, mat)
}

fn pow_fp(base: Fp, mut e: u64) -> Fp {
    let mut acc = base.one_like();
    let mut b = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&b);
        }
        b = b.mul(&b);
        e >>= 1;
    }
    acc
}

fn determinant(field: PrimeField, mut mat: Vec<Vec<Fp>>) -> Fp {
    let n = mat.len();
    let mut det = field.one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !mat[r][col].is_zero()) else {
            return field.zero();
        };
        if pivot != col {
            mat.swap(col, pivot);
            det = det.neg();
        }
        det = det.mul(&mat[col][col]);
        let inv = mat[col][col].inv().unwrap();
        let pivot_row = mat[col].clone();
        for row in mat.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].mul(&inv);
            for (dst, src) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                let t = src.mul(&factor);
                *dst = dst.sub(&t);
            }
        }
    }
    det
}

/// Lagrange interpolation through `(x_i, y_i)` with distinct `x_i`.
pub fn interpolate(field: PrimeField, points: &[(Fp, Fp)]) -> UniPoly {
    let mut acc = UniPoly::zero(field);
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = UniPoly::new(field, vec![field.one()]);
        let mut denom = field.one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&UniPoly::new(field, vec![xj.neg(), field.one()]));
            denom = denom.mul(&xi.sub(xj));
        }
        let scale = yi.mul(&denom.inv().expect("distinct interpolation nodes"));
        acc = acc.add(&basis.scale(&scale));
    }
    acc
}

fn degree_in(f: &MultiPoly<Fp>, var: usize) -> u32 {
    f.terms().map(|(m, _)| m.0[var]).max().unwrap_or(0)
}

/// Specializes the other variable of a bivariate polynomial to `t`,
/// producing a univariate polynomial in `var`.
fn specialize(field: PrimeField, f: &MultiPoly<Fp>, var: usize, t: Fp) -> UniPoly {
    let other = 1 - var;
    let mut coeffs = vec![field.zero(); degree_in(f, var) as usize + 1];
    for (m, c) in f.terms() {
        let tp = pow_fp_u32(t, m.0[other]);
        let idx = m.0[var] as usize;
        coeffs[idx] = coeffs[idx].add(&c.mul(&tp));
    }
    UniPoly::new(field, coeffs)
}

fn pow_fp_u32(base: Fp, e: u32) -> Fp {
    pow_fp(base, e as u64)
}

/// Leading coefficient of `f` in `var` as a univariate polynomial in the
/// other variable.
fn leading_in(field: PrimeField, f: &MultiPoly<Fp>, var: usize) -> UniPoly {
    let other = 1 - var;
    let d = degree_in(f, var);
    let mut coeffs = vec![field.zero(); degree_in(f, other) as usize + 1];
    for (m, c) in f.terms() {
        if m.0[var] == d {
            let idx = m.0[other] as usize;
            coeffs[idx] = coeffs[idx].add(c);
        }
    }
    UniPoly::new(field, coeffs)
}

/// Resultant of two bivariate polynomials with respect to variable `elim`,
/// returned as a univariate polynomial in the other variable.
///
/// Evaluation points where either leading coefficient (in `elim`) vanishes
/// are skipped, so each retained point is the honest Sylvester determinant
/// of the specialized pair.
pub fn resultant_bivariate(
    field: PrimeField,
    f: &MultiPoly<Fp>,
    g: &MultiPoly<Fp>,
    elim: usize,
) -> UniPoly {
    assert_eq!(f.nvars(), 2);
    assert_eq!(g.nvars(), 2);
    assert!(elim < 2);
    if f.is_zero() || g.is_zero() {
        return UniPoly::zero(field);
    }
    let other = 1 - elim;
    let df = degree_in(f, elim) as usize;
    let dg = degree_in(g, elim) as usize;
    if df == 0 {
        // f does not involve the eliminated variable: Res = f^{deg g}.
        let fu = specialize_to_other(field, f, other);
        return poly_power(&fu, dg);
    }
    if dg == 0 {
        let gu = specialize_to_other(field, g, other);
        return poly_power(&gu, df);
    }
    let bound = df * degree_in(g, other) as usize + dg * degree_in(f, other) as usize;
    let lf = leading_in(field, f, elim);
    let lg = leading_in(field, g, elim);
    let mut points: Vec<(Fp, Fp)> = Vec::with_capacity(bound + 1);
    let mut t_raw: u64 = 0;
    while points.len() < bound + 1 {
        let t = field.from_u64(t_raw);
        t_raw += 1;
        assert!(
            t_raw < field.characteristic(),
            "ran out of evaluation points"
        );
        if lf.eval(t).is_zero() || lg.eval(t).is_zero() {
            continue;
        }
        let fu = specialize(field, f, elim, t);
        let gu = specialize(field, g, elim, t);
        debug_assert_eq!(fu.degree(), Some(df));
        debug_assert_eq!(gu.degree(), Some(dg));
        points.push((t, resultant(&fu, &gu)));
    }
    interpolate(field, &points)
}

/// A bivariate polynomial constant in one variable, read off as univariate
/// in the other.
fn specialize_to_other(field: PrimeField, f: &MultiPoly<Fp>, other: usize) -> UniPoly {
    let mut coeffs = vec![field.zero(); degree_in(f, other) as usize + 1];
    for (m, c) in f.terms() {
        let idx = m.0[other] as usize;
        coeffs[idx] = coeffs[idx].add(c);
    }
    UniPoly::new(field, coeffs)
}

fn poly_power(f: &UniPoly, e: usize) -> UniPoly {
    let mut acc = UniPoly::new(f.field, vec![f.field.one()]);
    for _ in 0..e {
        acc = acc.mul(f);
    }
    acc
}
