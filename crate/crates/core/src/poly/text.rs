//! Text form of sparse polynomials: terms like `3*s^2*t` joined by `+`/`-`,
//! with variable names supplied per context. The printer emits terms in
//! descending grevlex order and the parser accepts exactly that shape, so
//! the two round-trip.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::multi::{Monomial, MultiPoly, PolyError};
use super::ring::{Coeff, Fp, PrimeField};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyParseError {
    #[error("empty term in `{0}`")]
    EmptyTerm(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("bad coefficient `{0}`")]
    BadCoefficient(String),
    #[error("bad exponent in `{0}`")]
    BadExponent(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Renders a polynomial with the given variable names. Zero prints as `0`.
pub fn format_poly<C: Coeff>(
    poly: &MultiPoly<C>,
    names: &[&str],
    mut coeff: impl FnMut(&C) -> String,
) -> String {
    assert_eq!(names.len(), poly.nvars());
    if poly.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let terms: Vec<(&Monomial, &C)> = poly.terms().collect();
    for (idx, (m, c)) in terms.iter().rev().enumerate() {
        let mut body = coeff(c);
        let negative = body.starts_with('-');
        if negative {
            body = body[1..].to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        if !(body == "1" && !m.is_unit()) {
            parts.push(body);
        }
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].to_string()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        let rendered = parts.join("*");
        if idx == 0 {
            if negative {
                out.push('-');
            }
            out.push_str(&rendered);
        } else {
            out.push_str(if negative { " - " } else { " + " });
            out.push_str(&rendered);
        }
    }
    out
}

pub fn format_rational_poly(poly: &MultiPoly<BigRational>, names: &[&str]) -> String {
    format_poly(poly, names, |c| c.to_string())
}

pub fn format_fp_poly(poly: &MultiPoly<Fp>, names: &[&str]) -> String {
    format_poly(poly, names, |c| c.value().to_string())
}

/// Parses the text form with the given variable names.
pub fn parse_poly<C: Coeff>(
    text: &str,
    names: &[&str],
    mut coeff: impl FnMut(&str) -> Option<C>,
    one: C,
) -> Result<MultiPoly<C>, PolyParseError> {
    let nvars = names.len();
    let mut out = MultiPoly::zero(nvars);
    let text = text.trim();
    if text.is_empty() || text == "0" {
        return Ok(out);
    }
    for (sign, term) in split_terms(text) {
        let term = term.trim();
        if term.is_empty() {
            return Err(PolyParseError::EmptyTerm(text.to_string()));
        }
        let mut c = one.clone();
        let mut exps = vec![0u32; nvars];
        for (i, factor) in term.split('*').enumerate() {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(PolyParseError::EmptyTerm(term.to_string()));
            }
            let leading_char = factor.chars().next().unwrap();
            if i == 0 && (leading_char.is_ascii_digit() || leading_char == '-') {
                c = coeff(factor).ok_or_else(|| PolyParseError::BadCoefficient(factor.to_string()))?;
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let exp: u32 = e
                        .parse()
                        .map_err(|_| PolyParseError::BadExponent(factor.to_string()))?;
                    (n, exp)
                }
                None => (factor, 1),
            };
            let var = names
                .iter()
                .position(|&n| n == name)
                .ok_or_else(|| PolyParseError::UnknownVariable(name.to_string()))?;
            exps[var] += exp;
        }
        if sign < 0 {
            c = c.neg();
        }
        out = out.add(&MultiPoly::monomial(nvars, exps, c));
    }
    Ok(out)
}

/// Splits on top-level `+`/`-`, keeping signs. A leading `-` binds to the
/// first term; `^-` never occurs because exponents are nonnegative.
fn split_terms(text: &str) -> Vec<(i32, String)> {
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut sign = 1;
    let mut seen_any = false;
    for ch in text.chars() {
        match ch {
            '+' | '-' if seen_any && !current.trim().is_empty() => {
                terms.push((sign, std::mem::take(&mut current)));
                sign = if ch == '-' { -1 } else { 1 };
            }
            '-' if current.trim().is_empty() && !seen_any => {
                sign = -sign;
                seen_any = true;
            }
            _ => {
                if !ch.is_whitespace() {
                    seen_any = true;
                }
                current.push(ch);
            }
        }
    }
    terms.push((sign, current));
    terms
}

pub fn parse_rational_poly(
    text: &str,
    names: &[&str],
) -> Result<MultiPoly<BigRational>, PolyParseError> {
    parse_poly(
        text,
        names,
        |s| {
            let (num, den) = match s.split_once('/') {
                Some((n, d)) => (n, d),
                None => (s, "1"),
            };
            let n: BigInt = num.parse().ok()?;
            let d: BigInt = den.parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(n, d))
        },
        BigRational::one(),
    )
}

pub fn parse_fp_poly(
    text: &str,
    names: &[&str],
    field: &PrimeField,
) -> Result<MultiPoly<Fp>, PolyParseError> {
    parse_poly(
        text,
        names,
        |s| s.parse::<i64>().ok().map(|v| field.element(v)),
        field.one(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    const STXY: [&str; 4] = ["s", "t", "x", "y"];

    #[test]
    fn prints_in_descending_order_with_signs() {
        let f = parse_rational_poly("s^2*x^2 + 2*x*t^3 - s^4*y^3", &STXY).unwrap();
        let printed = format_rational_poly(&f, &STXY);
        let reparsed = parse_rational_poly(&printed, &STXY).unwrap();
        assert_eq!(reparsed, f);
    }

    #[test]
    fn canonical_examples() {
        let f = parse_rational_poly("x^2 + t", &STXY).unwrap();
        assert_eq!(format_rational_poly(&f, &STXY), "x^2 + t");
        let g = parse_rational_poly("-x + 1/2", &STXY).unwrap();
        assert_eq!(format_rational_poly(&g, &STXY), "-x + 1/2");
        let z = MultiPoly::<BigRational>::zero(4);
        assert_eq!(format_rational_poly(&z, &STXY), "0");
        assert_eq!(parse_rational_poly("0", &STXY).unwrap(), z);
    }

    #[test]
    fn round_trip_on_random_rational_polys() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..200 {
            let mut f = MultiPoly::zero(4);
            for _ in 0..rng.gen_range(0..8) {
                let exps: Vec<u32> = (0..4).map(|_| rng.gen_range(0..4)).collect();
                let c = BigRational::new(
                    BigInt::from(rng.gen_range(-9..=9)),
                    BigInt::from(rng.gen_range(1..=5)),
                );
                f = f.add(&MultiPoly::monomial(4, exps, c));
            }
            let printed = format_rational_poly(&f, &STXY);
            let reparsed = parse_rational_poly(&printed, &STXY).unwrap();
            assert_eq!(reparsed, f, "through `{printed}`");
        }
    }

    #[test]
    fn fp_round_trip() {
        let field = PrimeField::new(101).unwrap();
        let f = parse_fp_poly("7*x^2*y + 100*x + 3", &["x", "y"], &field).unwrap();
        let printed = format_fp_poly(&f, &["x", "y"]);
        assert_eq!(parse_fp_poly(&printed, &["x", "y"], &field).unwrap(), f);
    }

    #[test]
    fn rejects_unknown_variables() {
        assert!(matches!(
            parse_rational_poly("z^2", &STXY),
            Err(PolyParseError::UnknownVariable(_))
        ));
    }
}
