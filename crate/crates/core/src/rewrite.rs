//! The rewriting system that puts every element of `H(q;1)` into the shape
//! `a^M b^N` with `M` in {0, 1}.
//!
//! The rules are `b^n a^{±1} -> a^{2n±1} b^{2nr}` (with r = (q-1)/2) and
//! `a^2 -> b^q`; the element `b^q = a^2` is central, so the `b^q`-powers
//! produced while reducing `M` modulo 2 slide freely to the right. These
//! identities use `a^2 = (b^-r a)^2`, which holds in `H(q;1)` but not in
//! `H(q;k)` for general k, so the normal form is a statement about `H(q;1)`.
//!
//! `N` is returned unreduced; callers compare residues modulo the order of
//! `b`, which is established by the matrix representation (q(q-1) at k = 1).

use num_bigint::BigInt;
use num_traits::Zero;

use crate::presentation::PresentationError;
use crate::word::{Word, ALPHA, BETA};

/// Exponents `(M, N)` with `w = a^M b^N` in `H(q;1)` and `M` in {0, 1}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalForm {
    pub alpha_exp: u8,
    pub beta_exp: BigInt,
}

/// Rewrites `w` to `a^M b^N`, scanning left to right.
///
/// State is the partial normal form `a^M b^N`. Absorbing one more `a^s`
/// (s = ±1) applies `b^N a^s = a^{2N+s} b^{2Nr}` and then reduces the
/// accumulated alpha exponent modulo 2 through the central `a^2 = b^q`.
pub fn normal_form(w: &Word, q: i64) -> Result<NormalForm, PresentationError> {
    if q < 3 || q % 2 == 0 {
        return Err(PresentationError::QNotOdd(q));
    }
    let r = BigInt::from((q - 1) / 2);
    let q_big = BigInt::from(q);

    let mut m: i64 = 0;
    let mut n = BigInt::zero();
    for &(g, e) in w.letters() {
        if g == BETA {
            n += e;
        } else {
            debug_assert_eq!(g, ALPHA, "normal_form is defined on rank-2 words");
            let step = if e > 0 { 1 } else { -1 };
            for _ in 0..e.unsigned_abs() {
                // a^m b^n a^s = a^{m + 2n + s} b^{2nr}
                let t: BigInt = BigInt::from(m) + 2 * &n + step;
                let m_next = ((&t % 2u8) + 2u8) % 2u8; // nonnegative residue
                let central: BigInt = (&t - &m_next) / 2;
                n = 2 * &n * &r + &q_big * central;
                m = i64::try_from(m_next).expect("residue mod 2");
            }
        }
    }
    Ok(NormalForm {
        alpha_exp: m as u8,
        beta_exp: n,
    })
}
