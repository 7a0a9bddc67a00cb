//! Elements of `Q(zeta_N)` in the canonical power basis.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use super::polynomial::{cyclotomic_polynomial, euler_phi};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycError {
    #[error("conductor {found} does not embed in {target}")]
    ConductorMismatch { found: u64, target: u64 },
    #[error("phase denominator {denom} does not divide the conductor {conductor}")]
    PhaseDenominator { denom: u64, conductor: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no multiplicative order")]
    ZeroArgument,
    #[error("element is not a root of unity of order <= {searched}")]
    NotRootOfUnity { searched: u64 },
}

/// Per-conductor reduction data: `Phi_N` and, for each degree d with
/// `phi(N) <= d <= maxdeg`, the coordinates of `x^d mod Phi_N` stored
/// sparsely. `maxdeg` covers both products of reduced elements (2*phi - 2)
/// and raw powers `x^e` with `e < N`.
struct Tables {
    phi: usize,
    reduction: Vec<Vec<(usize, BigInt)>>,
    cyclotomic: Vec<BigInt>,
}

impl Tables {
    fn build(n: u64) -> Tables {
        let phi = euler_phi(n) as usize;
        let cyclotomic = cyclotomic_polynomial(n);
        let maxdeg = usize::max(2 * phi.saturating_sub(1), n as usize - 1);
        // x^phi = -(c_0 + c_1 x + ... + c_{phi-1} x^{phi-1})
        let mut rows: Vec<Vec<(usize, BigInt)>> = Vec::new();
        if maxdeg >= phi {
            let first: Vec<(usize, BigInt)> = cyclotomic[..phi]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, -c.clone()))
                .collect();
            rows.push(first);
            for _ in (phi + 1)..=maxdeg {
                let prev = rows.last().unwrap();
                // x * prev, re-reducing the x^phi overflow through row 0.
                let mut dense = vec![BigInt::zero(); phi + 1];
                for &(i, ref c) in prev {
                    dense[i + 1] += c;
                }
                let top = std::mem::take(&mut dense[phi]);
                if !top.is_zero() {
                    for &(i, ref c) in &rows[0] {
                        dense[i] += &top * c;
                    }
                }
                let row: Vec<(usize, BigInt)> = dense[..phi]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i, c.clone()))
                    .collect();
                rows.push(row);
            }
        }
        Tables {
            phi,
            reduction: rows,
            cyclotomic,
        }
    }

    fn reduce_row(&self, d: usize) -> &[(usize, BigInt)] {
        &self.reduction[d - self.phi]
    }
}

fn tables(n: u64) -> Arc<Tables> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Tables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("conductor cache poisoned");
    guard.entry(n).or_insert_with(|| Arc::new(Tables::build(n))).clone()
}

/// A reduced phase `e(a/b) = exp(2 pi i a/b)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CycPhase {
    numer: i64,
    denom: u64,
}

impl CycPhase {
    /// Reduces `a/b` to lowest terms with `0 <= a < b`.
    pub fn new(numer: i64, denom: u64) -> CycPhase {
        assert!(denom > 0, "phase denominator must be positive");
        let d = denom as i64;
        let a = numer.rem_euclid(d);
        let g = (a as u64).gcd(&denom);
        let g = if g == 0 { denom } else { g };
        CycPhase {
            numer: a / g as i64,
            denom: denom / g,
        }
    }

    pub fn numer(&self) -> i64 {
        self.numer
    }

    pub fn denom(&self) -> u64 {
        self.denom
    }
}

impl fmt::Display for CycPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({}/{})", self.numer, self.denom)
    }
}

/// An element of `Q(zeta_N)`: `coords[i]` is the coefficient of `zeta_N^i`
/// in the power basis, with exactly `phi(N)` coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNumber {
    conductor: u64,
    coords: Vec<BigRational>,
}

impl CycNumber {
    pub fn zero(conductor: u64) -> CycNumber {
        let phi = euler_phi(conductor) as usize;
        CycNumber {
            conductor,
            coords: vec![BigRational::zero(); phi],
        }
    }

    pub fn one(conductor: u64) -> CycNumber {
        Self::from_rational(conductor, BigRational::one())
    }

    pub fn from_rational(conductor: u64, value: BigRational) -> CycNumber {
        let mut z = CycNumber::zero(conductor);
        z.coords[0] = value;
        z
    }

    pub fn from_integer(conductor: u64, value: i64) -> CycNumber {
        Self::from_rational(conductor, BigRational::from_integer(BigInt::from(value)))
    }

    /// The root of unity `e(a/b)` as an element of `Q(zeta_N)`; requires
    /// `b | N`.
    pub fn root_of_unity(phase: CycPhase, conductor: u64) -> Result<CycNumber, CycError> {
        if !conductor.is_multiple_of(phase.denom) {
            return Err(CycError::PhaseDenominator {
                denom: phase.denom,
                conductor,
            });
        }
        let step = conductor / phase.denom;
        let e = (phase.numer as u64 % phase.denom) * step % conductor;
        Ok(Self::power_of_zeta(conductor, e))
    }

    /// `zeta_N^e`, reduced.
    pub fn power_of_zeta(conductor: u64, e: u64) -> CycNumber {
        let t = tables(conductor);
        let e = (e % conductor) as usize;
        let mut z = CycNumber::zero(conductor);
        if e < t.phi {
            z.coords[e] = BigRational::one();
        } else {
            for &(i, ref c) in t.reduce_row(e) {
                z.coords[i] = BigRational::from_integer(c.clone());
            }
        }
        z
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(BigRational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self == &CycNumber::one(self.conductor)
    }

    fn assert_same_conductor(&self, other: &CycNumber) {
        assert_eq!(
            self.conductor, other.conductor,
            "conductor mismatch: {} vs {}",
            self.conductor, other.conductor
        );
    }

    pub fn add(&self, other: &CycNumber) -> CycNumber {
        self.assert_same_conductor(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        CycNumber {
            conductor: self.conductor,
            coords,
        }
    }

    pub fn sub(&self, other: &CycNumber) -> CycNumber {
        self.assert_same_conductor(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        CycNumber {
            conductor: self.conductor,
            coords,
        }
    }

    pub fn neg(&self) -> CycNumber {
        CycNumber {
            conductor: self.conductor,
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &CycNumber) -> CycNumber {
        self.assert_same_conductor(other);
        let t = tables(self.conductor);
        let phi = t.phi;
        let mut acc = vec![BigRational::zero(); 2 * phi.max(1) - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[i + j] += a * b;
            }
        }
        for d in (phi..acc.len()).rev() {
            if acc[d].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut acc[d], BigRational::zero());
            for &(i, ref r) in t.reduce_row(d) {
                acc[i] += &c * BigRational::from_integer(r.clone());
            }
        }
        acc.truncate(phi);
        CycNumber {
            conductor: self.conductor,
            coords: acc,
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// `Phi_N` in `Q[x]`.
    pub fn inv(&self) -> Result<CycNumber, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        let t = tables(self.conductor);
        let phi_poly: Vec<BigRational> = t
            .cyclotomic
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let a: Vec<BigRational> = self.coords.clone();
        // xgcd(a, Phi): s*a + t*Phi = g with g a nonzero constant.
        let (g, s) = poly_half_xgcd(&a, &phi_poly);
        debug_assert_eq!(poly_deg(&g), Some(0), "Phi_N is irreducible over Q");
        let ginv = g[0].recip();
        debug_assert!(poly_deg(&s).is_none_or(|d| d < t.phi), "Bezout factor too long");
        let mut coords = vec![BigRational::zero(); t.phi];
        for (i, c) in s.iter().take(t.phi).enumerate() {
            if !c.is_zero() {
                coords[i] = c * &ginv;
            }
        }
        Ok(CycNumber {
            conductor: self.conductor,
            coords,
        })
    }

    pub fn pow(&self, e: i64) -> Result<CycNumber, CycError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut result = CycNumber::one(self.conductor);
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

    /// Least `n >= 1` with `z^n = 1`, searched up to the conductor.
    pub fn multiplicative_order(&self) -> Result<u64, CycError> {
        if self.is_zero() {
            return Err(CycError::ZeroArgument);
        }
        let one = CycNumber::one(self.conductor);
        let mut acc = self.clone();
        for n in 1..=self.conductor {
            if acc == one {
                return Ok(n);
            }
            acc = acc.mul(self);
        }
        Err(CycError::NotRootOfUnity {
            searched: self.conductor,
        })
    }

    /// Image under `Q(zeta_N) -> Q(zeta_M)` for `N | M`, sending
    /// `zeta_N` to `zeta_M^{M/N}`.
    pub fn embed(&self, target: u64) -> Result<CycNumber, CycError> {
        if !target.is_multiple_of(self.conductor) {
            return Err(CycError::ConductorMismatch {
                found: self.conductor,
                target,
            });
        }
        let step = target / self.conductor;
        let mut out = CycNumber::zero(target);
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = CycNumber::power_of_zeta(target, i as u64 * step);
            let mut scaled = mono;
            for coord in &mut scaled.coords {
                *coord *= c;
            }
            out = out.add(&scaled);
        }
        Ok(out)
    }

    /// Nonzero `(coefficient, power)` pairs, as printed.
    pub fn terms(&self) -> Vec<(BigRational, usize)> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), i))
            .collect()
    }
}

fn poly_deg(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_divrem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let dd = poly_deg(den).expect("division by zero polynomial");
    let lead = den[dd].clone();
    let mut rem = num.to_vec();
    let mut quot = vec![BigRational::zero(); num.len().saturating_sub(dd) + 1];
    loop {
        let dr = match poly_deg(&rem) {
            Some(d) if d >= dd => d,
            _ => break,
        };
        let c = &rem[dr] / &lead;
        quot[dr - dd] = c.clone();
        for j in 0..=dd {
            let t = &c * &den[j];
            rem[dr - dd + j] -= t;
        }
    }
    (quot, rem)
}

/// Extended gcd returning `(g, s)` with `s*a = g (mod b)`.
fn poly_half_xgcd(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    let mut s0 = vec![BigRational::one()];
    let mut s1 = vec![BigRational::zero()];
    while poly_deg(&r1).is_some() {
        let (q, r) = poly_divrem(&r0, &r1);
        let qs = poly_mul(&q, &s1);
        let s = poly_sub(&s0, &qs);
        r0 = std::mem::take(&mut r1);
        r1 = r;
        s0 = std::mem::take(&mut s1);
        s1 = s;
    }
    (r0, s0)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

impl fmt::Display for CycNumber {
    /// `zeta12: [(-1,0)]` style: conductor then nonzero (coeff, power) pairs.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zeta{}: [", self.conductor)?;
        for (i, (c, p)) in self.terms().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({c},{p})")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CycNumber", 2)?;
        s.serialize_field("conductor", &self.conductor)?;
        let terms: Vec<(String, usize)> = self
            .terms()
            .into_iter()
            .map(|(c, p)| (c.to_string(), p))
            .collect();
        s.serialize_field("terms", &terms)?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn e(a: i64, b: u64, n: u64) -> CycNumber {
        CycNumber::root_of_unity(CycPhase::new(a, b), n).unwrap()
    }

    #[test]
    fn phase_reduction() {
        assert_eq!(CycPhase::new(5, 10), CycPhase::new(1, 2));
        assert_eq!(CycPhase::new(-1, 4), CycPhase::new(3, 4));
        assert_eq!(CycPhase::new(8, 4), CycPhase::new(0, 1));
    }

    #[test]
    fn half_turn_is_minus_one() {
        let minus_one = CycNumber::from_integer(12, -1);
        assert_eq!(e(1, 2, 12), minus_one);
    }

    #[test]
    fn primitive_cube_roots_sum_to_minus_one() {
        let sum = e(1, 3, 12).add(&e(2, 3, 12));
        assert_eq!(sum, CycNumber::from_integer(12, -1));
    }

    #[test]
    fn phases_adding_to_one_multiply_to_one() {
        assert!(e(5, 6, 12).mul(&e(1, 6, 12)).is_one());
    }

    #[test]
    fn inverse_of_i_is_minus_i() {
        assert_eq!(e(1, 4, 12).inv().unwrap(), e(3, 4, 12));
    }

    #[test]
    fn add_neg_cancels() {
        let z = e(1, 12, 12);
        assert!(z.add(&z.neg()).is_zero());
    }

    #[test]
    fn cyclotomic_polynomial_kills_zeta() {
        for n in 1..=60u64 {
            let phi = cyclotomic_polynomial(n);
            let zeta = CycNumber::power_of_zeta(n, 1);
            let mut acc = CycNumber::zero(n);
            let mut power = CycNumber::one(n);
            for c in &phi {
                let mut term = power.clone();
                for coord in &mut term.coords {
                    *coord *= BigRational::from_integer(c.clone());
                }
                acc = acc.add(&term);
                power = power.mul(&zeta);
            }
            assert!(acc.is_zero(), "Phi_{n}(zeta_{n}) != 0");
        }
    }

    #[test]
    fn random_inverses_multiply_to_one() {
        let mut rng = StdRng::seed_from_u64(7);
        let n = 12u64;
        let mut found = 0;
        while found < 100 {
            let mut z = CycNumber::zero(n);
            for c in &mut z.coords {
                *c = BigRational::from_integer(BigInt::from(rng.gen_range(-5..=5)));
            }
            if z.is_zero() {
                continue;
            }
            found += 1;
            assert!(z.mul(&z.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn ring_axioms_hold_on_random_triples() {
        for n in [5u64, 8, 12] {
            let mut rng = StdRng::seed_from_u64(n);
            for _ in 0..500 {
                let rand_elt = |rng: &mut StdRng| {
                    let mut z = CycNumber::zero(n);
                    for c in &mut z.coords {
                        *c = BigRational::new(
                            BigInt::from(rng.gen_range(-4..=4)),
                            BigInt::from(rng.gen_range(1..=3)),
                        );
                    }
                    z
                };
                let a = rand_elt(&mut rng);
                let b = rand_elt(&mut rng);
                let c = rand_elt(&mut rng);
                assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                assert_eq!(a.mul(&b), b.mul(&a));
            }
        }
    }

    #[test]
    fn root_of_unity_has_the_stated_order() {
        for b in 1..=40u64 {
            for a in 0..b {
                if a.gcd(&b) != 1 && a != 0 {
                    continue;
                }
                let z = e(a as i64, b, b);
                assert!(z.pow(b as i64).unwrap().is_one(), "e({a}/{b})^{b}");
            }
        }
    }

    #[test]
    fn multiplicative_orders() {
        assert_eq!(e(1, 2, 12).multiplicative_order().unwrap(), 2);
        // c = e(1/(2rk)) at q=3, k=1 has order 2.
        assert_eq!(e(1, 2, 12).multiplicative_order().unwrap(), 2);
        let not_root = CycNumber::one(12).add(&CycNumber::power_of_zeta(12, 1));
        assert_eq!(
            not_root.multiplicative_order(),
            Err(CycError::NotRootOfUnity { searched: 12 })
        );
        assert_eq!(
            CycNumber::zero(12).multiplicative_order(),
            Err(CycError::ZeroArgument)
        );
    }

    #[test]
    fn embedding_preserves_arithmetic() {
        let mut rng = StdRng::seed_from_u64(99);
        for _ in 0..50 {
            let mut a = CycNumber::zero(6);
            let mut b = CycNumber::zero(6);
            for c in &mut a.coords {
                *c = BigRational::from_integer(BigInt::from(rng.gen_range(-5..=5)));
            }
            for c in &mut b.coords {
                *c = BigRational::from_integer(BigInt::from(rng.gen_range(-5..=5)));
            }
            let ea = a.embed(24).unwrap();
            let eb = b.embed(24).unwrap();
            assert_eq!(a.add(&b).embed(24).unwrap(), ea.add(&eb));
            assert_eq!(a.mul(&b).embed(24).unwrap(), ea.mul(&eb));
        }
        assert!(CycNumber::one(5).embed(7).is_err());
    }

    #[test]
    fn printable_form() {
        assert_eq!(e(1, 2, 12).to_string(), "zeta12: [(-1,0)]");
        assert_eq!(CycNumber::power_of_zeta(12, 1).to_string(), "zeta12: [(1,1)]");
    }
}
