//! 2x2 matrices with cyclotomic entries.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::cyclo::{CycError, CycNumber};

/// Row-major entries `[a, b, c, d]`, all over the same conductor.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Mat2 {
    entries: [CycNumber; 4],
}

impl Mat2 {
    pub fn new(entries: [CycNumber; 4]) -> Mat2 {
        let n = entries[0].conductor();
        assert!(
            entries.iter().all(|e| e.conductor() == n),
            "matrix entries must share a conductor"
        );
        Mat2 { entries }
    }

    pub fn identity(conductor: u64) -> Mat2 {
        Mat2::new([
            CycNumber::one(conductor),
            CycNumber::zero(conductor),
            CycNumber::zero(conductor),
            CycNumber::one(conductor),
        ])
    }

    pub fn conductor(&self) -> u64 {
        self.entries[0].conductor()
    }

    pub fn entries(&self) -> &[CycNumber; 4] {
        &self.entries
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let [a, b, c, d] = &self.entries;
        let [e, f, g, h] = &other.entries;
        Mat2::new([
            a.mul(e).add(&b.mul(g)),
            a.mul(f).add(&b.mul(h)),
            c.mul(e).add(&d.mul(g)),
            c.mul(f).add(&d.mul(h)),
        ])
    }

    pub fn det(&self) -> CycNumber {
        let [a, b, c, d] = &self.entries;
        a.mul(d).sub(&b.mul(c))
    }

    pub fn inv(&self) -> Result<Mat2, CycError> {
        let [a, b, c, d] = &self.entries;
        let det_inv = self.det().inv()?;
        Ok(Mat2::new([
            d.mul(&det_inv),
            b.neg().mul(&det_inv),
            c.neg().mul(&det_inv),
            a.mul(&det_inv),
        ]))
    }

    pub fn scalar_mul(&self, s: &CycNumber) -> Mat2 {
        Mat2::new([
            self.entries[0].mul(s),
            self.entries[1].mul(s),
            self.entries[2].mul(s),
            self.entries[3].mul(s),
        ])
    }

    /// `Some(lambda)` when the matrix is `lambda * I`.
    pub fn as_scalar(&self) -> Option<&CycNumber> {
        let [a, b, c, d] = &self.entries;
        if b.is_zero() && c.is_zero() && a == d {
            Some(a)
        } else {
            None
        }
    }

    pub fn pow(&self, e: i64) -> Result<Mat2, CycError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut result = Mat2::identity(self.conductor());
        let mut acc = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&acc);
            }
            n >>= 1;
            if n > 0 {
                acc = acc.mul(&acc);
            }
        }
        Ok(result)
    }

    /// Power with an arbitrary-precision exponent (square and multiply over
    /// the magnitude bits, inverting first for negative exponents).
    pub fn pow_big(&self, e: &BigInt) -> Result<Mat2, CycError> {
        let base = if e < &BigInt::zero() {
            self.inv()?
        } else {
            self.clone()
        };
        let mut result = Mat2::identity(self.conductor());
        let mag = e.magnitude();
        let bits = mag.bits();
        let mut acc = base;
        for i in 0..bits {
            if mag.bit(i) {
                result = result.mul(&acc);
            }
            if i + 1 < bits {
                acc = acc.mul(&acc);
            }
        }
        Ok(result)
    }

    /// Canonical representative modulo scalars: all entries divided by the
    /// first nonzero one.
    pub fn projective_normalize(&self) -> Mat2 {
        let pivot = self
            .entries
            .iter()
            .find(|e| !e.is_zero())
            .expect("projective form of the zero matrix");
        let pivot_inv = pivot.inv().expect("nonzero entry");
        self.scalar_mul(&pivot_inv)
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.entries;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycPhase;

    fn e(a: i64, b: u64, n: u64) -> CycNumber {
        CycNumber::root_of_unity(CycPhase::new(a, b), n).unwrap()
    }

    fn swap_matrix(n: u64) -> Mat2 {
        Mat2::new([
            CycNumber::zero(n),
            CycNumber::one(n),
            CycNumber::one(n),
            CycNumber::zero(n),
        ])
    }

    #[test]
    fn identity_is_neutral() {
        let m = swap_matrix(12);
        let id = Mat2::identity(12);
        assert_eq!(m.mul(&id), m);
        assert_eq!(id.mul(&m), m);
    }

    #[test]
    fn inverse_of_diagonal() {
        let n = 12;
        let m = Mat2::new([
            e(1, 4, n),
            CycNumber::zero(n),
            CycNumber::zero(n),
            e(1, 3, n),
        ]);
        assert_eq!(m.mul(&m.inv().unwrap()), Mat2::identity(n));
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let n = 12;
        let m = Mat2::new([
            CycNumber::zero(n),
            e(1, 12, n),
            e(1, 12, n),
            CycNumber::zero(n),
        ]);
        let mut acc = Mat2::identity(n);
        for k in 0..=6i64 {
            assert_eq!(m.pow(k).unwrap(), acc, "power {k}");
            assert_eq!(m.pow_big(&BigInt::from(k)).unwrap(), acc);
            acc = acc.mul(&m);
        }
        assert_eq!(m.pow(-3).unwrap(), m.inv().unwrap().pow(3).unwrap());
        assert_eq!(
            m.pow_big(&BigInt::from(-3)).unwrap(),
            m.pow(-3).unwrap()
        );
    }

    #[test]
    fn scalar_detection() {
        let n = 12;
        let s = Mat2::identity(n).scalar_mul(&e(1, 2, n));
        assert_eq!(s.as_scalar(), Some(&e(1, 2, n)));
        assert_eq!(swap_matrix(n).as_scalar(), None);
    }

    #[test]
    fn projective_normalization_collapses_scalars() {
        let n = 12;
        let m = swap_matrix(n);
        let scaled = m.scalar_mul(&e(1, 3, n));
        assert_eq!(m.projective_normalize(), scaled.projective_normalize());
    }
}
