//! Exact sparse multivariate polynomial arithmetic over `Q` and prime
//! fields, weighted gradings, and the Groebner/resultant kernels used by
//! the singularity audits.

mod groebner;
mod multi;
mod ring;
mod text;
mod univar;

pub use groebner::{groebner, poly_reduce, quotient_dimension, QuotientDim};
pub use multi::{substitute_homogeneous, MultiPoly, Monomial, PolyError, WeightedGrading};
pub use ring::{Coeff, Fp, PrimeField};
pub use text::{
    format_fp_poly, format_poly, format_rational_poly, parse_fp_poly, parse_rational_poly,
    PolyParseError,
};
pub use univar::{interpolate, resultant, resultant_bivariate, UniPoly};
