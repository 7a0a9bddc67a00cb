//! The defining polynomial of the curve family and concrete instances of
//! it: seeded random members and the classical three-cusp quartic fixture.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{
    parse_rational_poly, substitute_homogeneous, MultiPoly, PolyError, WeightedGrading,
};
use crate::presentation::{GroupParams, PresentationError};

/// Variables of the four-variable polynomial `F`.
pub const STXY: [&str; 4] = ["s", "t", "x", "y"];
/// Projective coordinates of constructed curves.
pub const XI: [&str; 3] = ["xi0", "xi1", "xi2"];
/// Coordinates of the quartic fixture.
pub const XYZ: [&str; 3] = ["x", "y", "z"];

/// The weights `(k, l, ql - mk, pl - mk)` that make `F` weighted
/// homogeneous.
pub fn curve_weights(params: &GroupParams) -> WeightedGrading {
    let d = params.form_degrees();
    WeightedGrading::new(d.map(|v| u32::try_from(v).expect("nonnegative weight")).to_vec())
}

/// `F(s,t,x,y) = ((s^m x + t^q)^p - (s^m y + t^p)^q) / s^m`, exactly
/// divisible by construction and weighted homogeneous of total degree
/// `pql - mk`.
pub fn build_f(params: &GroupParams) -> Result<MultiPoly<BigRational>, PolyError> {
    let one = BigRational::from_integer(BigInt::from(1));
    let var = |i: usize| MultiPoly::variable(4, i, one.clone());
    let (s, t, x, y) = (var(0), var(1), var(2), var(3));
    let s_m = s.pow(params.m as u32);
    let first = s_m.mul(&x).add(&t.pow(params.q as u32)).pow(params.p as u32);
    let second = s_m.mul(&y).add(&t.pow(params.p as u32)).pow(params.q as u32);
    let f = first.sub(&second).exact_divide(&s_m)?;
    let grading = curve_weights(params);
    if !f.is_weighted_homogeneous(&grading) {
        return Err(PolyError::NotWeightedHomogeneous);
    }
    debug_assert_eq!(f.weighted_degree(&grading)?, params.total_degree());
    Ok(f)
}

/// Where a curve instance came from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CurveSource {
    /// Seeded random forms substituted into `F`.
    Constructed,
    /// The literal three-cusp quartic.
    ZariskiQuartic,
}

impl CurveSource {
    pub fn variable_names(&self) -> [&'static str; 3] {
        match self {
            CurveSource::Constructed => XI,
            CurveSource::ZariskiQuartic => XYZ,
        }
    }
}

/// A concrete plane curve: parameters, the substituted forms (when
/// constructed), and the homogeneous trivariate equation.
#[derive(Clone, Debug)]
pub struct CurveInstance {
    pub params: GroupParams,
    pub seed: Option<u64>,
    pub forms: Option<[MultiPoly<BigRational>; 4]>,
    pub equation: MultiPoly<BigRational>,
    pub degree: i64,
    pub source: CurveSource,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CurveBuildError {
    #[error(transparent)]
    Params(#[from] PresentationError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Builds `C(q,k)` from seeded random forms: `S`, `T` of degree k, `X` of
/// degree `(q-2)k`, and `Y = 1` (the theorem case has `deg y = 0`).
/// Coefficients are uniform in `[-20, 20]` minus zero, drawn in a fixed
/// monomial order, so a seed pins the curve exactly.
pub fn curve_build(q: i64, k: i64, seed: u64) -> Result<CurveInstance, CurveBuildError> {
    let params = GroupParams::dihedral(q, k)?;
    let f = build_f(&params)?;
    // ChaCha8 is stable across platforms and releases, so a seed pins the
    // curve for good.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let degrees = params.form_degrees();
    let s_form = random_form(&mut rng, degrees[0] as u32);
    let t_form = random_form(&mut rng, degrees[1] as u32);
    let x_form = random_form(&mut rng, degrees[2] as u32);
    let y_form = MultiPoly::constant(3, BigRational::from_integer(BigInt::from(1)));
    let forms = [s_form, t_form, x_form, y_form];
    let equation = substitute_homogeneous(&f, &forms, &degrees, &curve_weights(&params))?;
    Ok(CurveInstance {
        params,
        seed: Some(seed),
        forms: Some(forms),
        equation,
        degree: params.total_degree(),
        source: CurveSource::Constructed,
    })
}

/// Dense homogeneous form of the given degree in three variables with
/// nonzero integer coefficients. Monomials are filled in a fixed
/// lexicographic order of exponent triples.
fn random_form(rng: &mut ChaCha8Rng, degree: u32) -> MultiPoly<BigRational> {
    let mut out = MultiPoly::zero(3);
    for a in (0..=degree).rev() {
        for b in (0..=(degree - a)).rev() {
            let c = degree - a - b;
            let coeff = loop {
                let v: i64 = rng.gen_range(-20..=20);
                if v != 0 {
                    break v;
                }
            };
            out = out.add(&MultiPoly::monomial(
                3,
                vec![a, b, c],
                BigRational::from_integer(BigInt::from(coeff)),
            ));
        }
    }
    out
}

/// The three-cusp quartic `x^2 y^2 + y^2 z^2 + z^2 x^2 - 2xyz(x+y+z)`.
pub fn zariski_quartic() -> CurveInstance {
    let equation = parse_rational_poly(
        "x^2*y^2 + y^2*z^2 + z^2*x^2 - 2*x^2*y*z - 2*x*y^2*z - 2*x*y*z^2",
        &XYZ,
    )
    .expect("literal quartic");
    CurveInstance {
        params: GroupParams::dihedral(3, 1).expect("q=3, k=1"),
        seed: None,
        forms: None,
        equation,
        degree: 4,
        source: CurveSource::ZariskiQuartic,
    }
}
