//! Coefficient domains: exact rationals and prime fields with a certified
//! modulus.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::multi::PolyError;

/// Coefficient ring operations needed by the polynomial kernels. `inv`
/// returns `None` for zero (and would for non-units, but both domains here
/// are fields).
pub trait Coeff: Clone + PartialEq + Eq + Hash + fmt::Debug {
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Option<Self>;
}

impl Coeff for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// An element of `F_p`, carrying its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn check(&self, other: &Fp) {
        assert_eq!(
            self.modulus, other.modulus,
            "prime field mismatch: {} vs {}",
            self.modulus, other.modulus
        );
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Coeff for Fp {
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn is_one(&self) -> bool {
        self.value == 1
    }
    fn zero_like(&self) -> Self {
        Fp {
            value: 0,
            modulus: self.modulus,
        }
    }
    fn one_like(&self) -> Self {
        Fp {
            value: 1 % self.modulus,
            modulus: self.modulus,
        }
    }
    fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut v = self.value + other.value;
        if v >= self.modulus {
            v -= self.modulus;
        }
        Fp {
            value: v,
            modulus: self.modulus,
        }
    }
    fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let v = if self.value >= other.value {
            self.value - other.value
        } else {
            self.value + self.modulus - other.value
        };
        Fp {
            value: v,
            modulus: self.modulus,
        }
    }
    fn neg(&self) -> Self {
        Fp {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }
    fn mul(&self, other: &Self) -> Self {
        self.check(other);
        Fp {
            value: ((self.value as u128 * other.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        // Fermat: p is certified prime at field construction.
        Some(Fp {
            value: pow_mod(self.value, self.modulus - 2, self.modulus),
            modulus: self.modulus,
        })
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc: u64 = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % modulus as u128) as u64;
        }
        base = ((base as u128 * base as u128) % modulus as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// A prime field `F_p` whose characteristic is certified at construction by
/// trial division and a strong pseudoprime (Miller-Rabin) test over a base
/// set that is deterministic for u64.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField, PolyError> {
        if is_prime_u64(p) {
            Ok(PrimeField { p })
        } else {
            Err(PolyError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn element(&self, v: i64) -> Fp {
        Fp {
            value: v.rem_euclid(self.p as i64) as u64,
            modulus: self.p,
        }
    }

    pub fn from_u64(&self, v: u64) -> Fp {
        Fp {
            value: v % self.p,
            modulus: self.p,
        }
    }

    pub fn zero(&self) -> Fp {
        self.from_u64(0)
    }

    pub fn one(&self) -> Fp {
        self.from_u64(1)
    }

    /// Reduction of an exact rational; fails when p divides the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<Fp, PolyError> {
        let p = BigInt::from(self.p);
        let den = q.denom().mod_floor(&p);
        if den.is_zero() {
            return Err(PolyError::PrimeDividesDenominator(self.p));
        }
        let num = q.numer().mod_floor(&p);
        let num = u64::try_from(num).expect("reduced mod p");
        let den = u64::try_from(den).expect("reduced mod p");
        let den_inv = self.from_u64(den).inv().expect("nonzero denominator");
        Ok(self.from_u64(num).mul(&den_inv))
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    // Miller-Rabin with the first twelve primes as bases decides u64.
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
