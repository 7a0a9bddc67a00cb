//! Freely reduced words in a finitely generated free group.
//!
//! Words are run-length encoded as `(generator, exponent)` pairs so that
//! high-power relators such as `b^27` stay compact. Every constructor and
//! operation maintains free reduction: adjacent pairs carry distinct
//! generators and no exponent is zero. The empty word is the identity.

use std::fmt;

use thiserror::Error;

/// Identifier of a free-group generator. `ALPHA` and `BETA` are the two
/// generators used throughout the presentation builders; higher ids are
/// allowed for ad-hoc presentations.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Gen(pub u32);

pub const ALPHA: Gen = Gen(0);
pub const BETA: Gen = Gen(1);

impl Gen {
    fn name(self) -> String {
        match self {
            ALPHA => "a".to_string(),
            BETA => "b".to_string(),
            Gen(i) => format!("g{i}"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordParseError {
    #[error("unknown generator token `{0}`")]
    UnknownGenerator(String),
    #[error("bad exponent in token `{0}`")]
    BadExponent(String),
}

/// A freely reduced word, run-length encoded.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<(Gen, i64)>,
}

impl Word {
    /// The empty word (group identity).
    pub fn identity() -> Self {
        Word::default()
    }

    /// The single-letter word `g`.
    pub fn generator(g: Gen) -> Self {
        Word { letters: vec![(g, 1)] }
    }

    /// The word `g^e` (identity when `e == 0`).
    pub fn generator_power(g: Gen, e: i64) -> Self {
        if e == 0 {
            Word::identity()
        } else {
            Word { letters: vec![(g, e)] }
        }
    }

    /// Builds a word from raw pairs, freely reducing as it goes.
    pub fn from_letters<I: IntoIterator<Item = (Gen, i64)>>(letters: I) -> Self {
        let mut out: Vec<(Gen, i64)> = Vec::new();
        for (g, e) in letters {
            push_reduced(&mut out, g, e);
        }
        Word { letters: out }
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// The reduced `(generator, exponent)` pairs.
    pub fn letters(&self) -> &[(Gen, i64)] {
        &self.letters
    }

    /// Word length counted in single letters, i.e. the sum of |exponent|.
    pub fn letter_len(&self) -> u64 {
        self.letters.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    /// Largest generator id appearing in the word, if any.
    pub fn max_generator(&self) -> Option<Gen> {
        self.letters.iter().map(|&(g, _)| g).max()
    }

    /// Net exponent of `g` (image in the free abelianization).
    pub fn exponent_sum(&self, g: Gen) -> i64 {
        self.letters
            .iter()
            .filter(|&&(h, _)| h == g)
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut out = self.letters.clone();
        for &(g, e) in &other.letters {
            push_reduced(&mut out, g, e);
        }
        Word { letters: out }
    }

    pub fn invert(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn power(&self, n: i64) -> Word {
        if n == 0 {
            return Word::identity();
        }
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut out = base.clone();
        for _ in 1..n.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// The commutator `x w x^-1 w^-1`, freely reduced.
    pub fn commutator(x: &Word, w: &Word) -> Word {
        x.multiply(w).multiply(&x.invert()).multiply(&w.invert())
    }

    /// Re-runs free reduction over the stored pairs. Idempotent; the stored
    /// form is already reduced, so this is primarily a test hook.
    pub fn free_reduce(&self) -> Word {
        Word::from_letters(self.letters.iter().copied())
    }

    /// Parses the whitespace-separated text form, e.g. `b^-1 a b^-1 a`.
    /// The empty string is the identity.
    pub fn parse(text: &str) -> Result<Word, WordParseError> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => {
                    let exp: i64 = e
                        .parse()
                        .map_err(|_| WordParseError::BadExponent(tok.to_string()))?;
                    (b, exp)
                }
                None => (tok, 1),
            };
            let g = match base {
                "a" => ALPHA,
                "b" => BETA,
                other => {
                    if let Some(num) = other.strip_prefix('g') {
                        let id: u32 = num
                            .parse()
                            .map_err(|_| WordParseError::UnknownGenerator(tok.to_string()))?;
                        Gen(id)
                    } else {
                        return Err(WordParseError::UnknownGenerator(tok.to_string()));
                    }
                }
            };
            letters.push((g, exp));
        }
        Ok(Word::from_letters(letters))
    }
}

fn push_reduced(out: &mut Vec<(Gen, i64)>, g: Gen, e: i64) {
    if e == 0 {
        return;
    }
    match out.last_mut() {
        Some((h, f)) if *h == g => {
            *f += e;
            if *f == 0 {
                out.pop();
            }
        }
        _ => out.push((g, e)),
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(g, e) in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", g.name())?;
            } else {
                write!(f, "{}^{}", g.name(), e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            write!(f, "Word(1)")
        } else {
            write!(f, "Word({self})")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        Word::parse(text).unwrap()
    }

    #[test]
    fn multiply_cancels_inverse_letter() {
        let a = Word::generator(ALPHA);
        let ainv = Word::generator_power(ALPHA, -1);
        assert!(a.multiply(&ainv).is_identity());
    }

    #[test]
    fn invert_reverses_and_negates() {
        assert_eq!(w("a b").invert(), w("b^-1 a^-1"));
    }

    #[test]
    fn power_repeats_word() {
        let a0 = w("b^-1 a");
        assert_eq!(a0.power(2), w("b^-1 a b^-1 a"));
        assert_eq!(a0.power(-1), w("a^-1 b"));
        assert!(a0.power(0).is_identity());
    }

    #[test]
    fn from_letters_reduces_across_merges() {
        // a b b^-1 a^-1 a -> a
        let word = Word::from_letters([(ALPHA, 1), (BETA, 1), (BETA, -1), (ALPHA, -1), (ALPHA, 1)]);
        assert_eq!(word, w("a"));
    }

    #[test]
    fn parse_and_print_round_trip() {
        for text in ["", "a", "b^-1 a b^-1 a", "a^2 b^-3", "b^10 a^-1 b^2 a^-1 b^2"] {
            let word = w(text);
            assert_eq!(Word::parse(&word.to_string()).unwrap(), word);
            assert_eq!(word.to_string(), text);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!(
            Word::parse("c"),
            Err(WordParseError::UnknownGenerator(_))
        ));
        assert!(matches!(
            Word::parse("a^x"),
            Err(WordParseError::BadExponent(_))
        ));
    }

    #[test]
    fn exponent_sums() {
        let word = w("a^2 b^-3 a^-1");
        assert_eq!(word.exponent_sum(ALPHA), 1);
        assert_eq!(word.exponent_sum(BETA), -3);
    }
}
