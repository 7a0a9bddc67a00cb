//! Finitely presented groups: the family `G<p,q>`, the complement
//! presentations built from it, and the finite quotients `H(q;k)`.
//!
//! All builders return relators as freely reduced [`Word`]s; a relator `w`
//! is read as the relation `w = 1`.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::word::{Gen, Word, ALPHA, BETA};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("p and q must both exceed 1 (got p={p}, q={q})")]
    ExponentsTooSmall { p: i64, q: i64 },
    #[error("p={p} and q={q} are not coprime")]
    NotCoprime { p: i64, q: i64 },
    #[error("m must exceed 1 (got {0})")]
    MultiplicityTooSmall(i64),
    #[error("k and l must be positive (got k={k}, l={l})")]
    NonPositiveWeights { k: i64, l: i64 },
    #[error("weights must satisfy pl >= mk and ql >= mk (p={p}, q={q}, m={m}, k={k}, l={l})")]
    WeightInequality { p: i64, q: i64, m: i64, k: i64, l: i64 },
    #[error("q must be odd and >= 3 (got {0})")]
    QNotOdd(i64),
    #[error("relator uses generator {0:?} outside the declared range")]
    GeneratorOutOfRange(Gen),
    #[error("generator count must be positive")]
    NoGenerators,
}

/// Generators-and-relators data. Generator ids run `0..generator_count`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    generator_count: usize,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(
        generator_count: usize,
        relators: Vec<Word>,
    ) -> Result<Presentation, PresentationError> {
        if generator_count == 0 {
            return Err(PresentationError::NoGenerators);
        }
        for r in &relators {
            if let Some(g) = r.max_generator() {
                if g.0 as usize >= generator_count {
                    return Err(PresentationError::GeneratorOutOfRange(g));
                }
            }
        }
        Ok(Presentation {
            generator_count,
            relators,
        })
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} generators | ", self.generator_count)?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, " >")
    }
}

/// Parameters `(p, q, m, k, l)` of the curve/group family, together with the
/// derived quantities used by the builders.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GroupParams {
    pub p: i64,
    pub q: i64,
    pub m: i64,
    pub k: i64,
    pub l: i64,
}

impl GroupParams {
    pub fn new(p: i64, q: i64, m: i64, k: i64, l: i64) -> Result<Self, PresentationError> {
        if p <= 1 || q <= 1 {
            return Err(PresentationError::ExponentsTooSmall { p, q });
        }
        if p.gcd(&q) != 1 {
            return Err(PresentationError::NotCoprime { p, q });
        }
        if m <= 1 {
            return Err(PresentationError::MultiplicityTooSmall(m));
        }
        if k < 1 || l < 1 {
            return Err(PresentationError::NonPositiveWeights { k, l });
        }
        if p * l < m * k || q * l < m * k {
            return Err(PresentationError::WeightInequality { p, q, m, k, l });
        }
        Ok(GroupParams { p, q, m, k, l })
    }

    /// The p = m = 2, l = k specialization with q odd; the case in which the
    /// quotient group is finite.
    pub fn dihedral(q: i64, k: i64) -> Result<Self, PresentationError> {
        if q < 3 || q % 2 == 0 {
            return Err(PresentationError::QNotOdd(q));
        }
        GroupParams::new(2, q, 2, k, k)
    }

    /// `r = (q-1)/2` for odd q.
    pub fn half(&self) -> Result<i64, PresentationError> {
        if self.q % 2 == 0 {
            return Err(PresentationError::QNotOdd(self.q));
        }
        Ok((self.q - 1) / 2)
    }

    /// The Bezout pair for (p, q).
    pub fn mu_nu(&self) -> (i64, i64) {
        bezout(self.p, self.q).expect("validated at construction")
    }

    /// The distinguished element `a0 = b^mu a^nu`.
    pub fn a_zero(&self) -> Word {
        let (mu, nu) = self.mu_nu();
        Word::generator_power(BETA, mu).multiply(&Word::generator_power(ALPHA, nu))
    }

    /// Degrees `(k, l, ql - mk, pl - mk)` of the substituted forms; also the
    /// variable weights that make the curve polynomial weighted homogeneous.
    pub fn form_degrees(&self) -> [i64; 4] {
        [
            self.k,
            self.l,
            self.q * self.l - self.m * self.k,
            self.p * self.l - self.m * self.k,
        ]
    }

    /// Total weighted degree `pql - mk` of the curve polynomial.
    pub fn total_degree(&self) -> i64 {
        self.p * self.q * self.l - self.m * self.k
    }
}

/// Solves `mu*p + nu*q = 1` with the normalization `0 <= nu < p`.
///
/// The normalization is what makes `a0 = b^mu a^nu` specialize to `b^-r a`
/// when p = 2 and q = 2r + 1.
pub fn bezout(p: i64, q: i64) -> Result<(i64, i64), PresentationError> {
    if p <= 1 || q <= 1 {
        return Err(PresentationError::ExponentsTooSmall { p, q });
    }
    let e = p.extended_gcd(&q);
    if e.gcd != 1 {
        return Err(PresentationError::NotCoprime { p, q });
    }
    // e.x*p + e.y*q = 1; shift nu = e.y into [0, p).
    let nu = e.y.rem_euclid(p);
    let mu = (1 - nu * q) / p;
    debug_assert_eq!(mu * p + nu * q, 1);
    Ok((mu, nu))
}

/// `G<p,q> = < a, b | a^p = b^q >`.
pub fn presentation_g(p: i64, q: i64) -> Result<Presentation, PresentationError> {
    if p <= 1 || q <= 1 {
        return Err(PresentationError::ExponentsTooSmall { p, q });
    }
    if p.gcd(&q) != 1 {
        return Err(PresentationError::NotCoprime { p, q });
    }
    Presentation::new(2, vec![power_relation(p, q)])
}

/// The fundamental group of the weighted-homogeneous hypersurface
/// complement: `G<p,q>` with `a0^m` forced into the center.
pub fn presentation_pi1_u(params: &GroupParams) -> Presentation {
    let a0m = params.a_zero().power(params.m);
    let relators = vec![
        power_relation(params.p, params.q),
        Word::commutator(&Word::generator(ALPHA), &a0m),
        Word::commutator(&Word::generator(BETA), &a0m),
    ];
    Presentation::new(2, relators).expect("two-generator relators")
}

/// The projective-complement presentation: `presentation_pi1_u` plus the
/// relation `b^{ql} = a0^{mk}`.
pub fn presentation_complement(params: &GroupParams) -> Presentation {
    let mut relators = presentation_pi1_u(params).relators().to_vec();
    let a0 = params.a_zero();
    relators.push(
        Word::generator_power(BETA, params.q * params.l).multiply(&a0.power(-params.m * params.k)),
    );
    Presentation::new(2, relators).expect("two-generator relators")
}

/// The finite quotient `H(q;k)` for odd q = 2r+1:
///
/// `< a, b | a^2 = b^q, b^{qk} = (b^-r a)^{2k}, [a, (b^-r a)^2], [b, (b^-r a)^2] >`
///
/// The two commutator relations are redundant for k = 1 but are emitted
/// uniformly for every k.
pub fn presentation_h(q: i64, k: i64) -> Result<Presentation, PresentationError> {
    if q < 3 || q % 2 == 0 {
        return Err(PresentationError::QNotOdd(q));
    }
    if k < 1 {
        return Err(PresentationError::NonPositiveWeights { k, l: k });
    }
    let r = (q - 1) / 2;
    let a0 = Word::generator_power(BETA, -r).multiply(&Word::generator(ALPHA));
    let a0_sq = a0.power(2);
    let relators = vec![
        power_relation(2, q),
        Word::generator_power(BETA, q * k).multiply(&a0.power(-2 * k)),
        Word::commutator(&Word::generator(ALPHA), &a0_sq),
        Word::commutator(&Word::generator(BETA), &a0_sq),
    ];
    Presentation::new(2, relators)
}

/// Relator `a^p b^-q` for the relation `a^p = b^q`.
fn power_relation(p: i64, q: i64) -> Word {
    Word::generator_power(ALPHA, p).multiply(&Word::generator_power(BETA, -q))
}
