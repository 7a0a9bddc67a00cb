//! Cyclotomic polynomials over the integers, dense representation
//! (`coeffs[i]` is the coefficient of `x^i`).

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1);
    let mut phi = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            phi -= phi / p;
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// `Phi_n`, computed by exact division of `x^n - 1` by the product of all
/// `Phi_d` with `d | n`, `d < n`. Monic of degree `phi(n)`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    let mut table: Vec<(u64, Vec<BigInt>)> = Vec::new();
    for d in divisors(n) {
        let mut f = x_pow_minus_one(d);
        for &(e, ref phi_e) in &table {
            if d % e == 0 {
                f = exact_div(&f, phi_e);
            }
        }
        table.push((d, f));
    }
    table.pop().expect("n divides n").1
}

fn x_pow_minus_one(n: u64) -> Vec<BigInt> {
    let mut f = vec![BigInt::zero(); n as usize + 1];
    f[0] = -BigInt::one();
    f[n as usize] = BigInt::one();
    f
}

/// Exact division by a monic divisor; panics on a nonzero remainder, which
/// cannot occur for cyclotomic factors.
fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false), "divisor must be monic");
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(dn >= dd);
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for i in (0..=dn - dd).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[i] = c.clone();
        for j in 0..=dd {
            let t = &c * &den[j];
            rem[i + j] -= t;
        }
    }
    assert!(rem.iter().all(BigInt::is_zero), "division was not exact");
    quot
}
