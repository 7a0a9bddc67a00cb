//! curvegroup: an exact verification toolkit for a family of singular plane
//! curves C(q,k) and the finite fundamental groups of their complements.
//!
//! The library machine-checks every computable claim about the family:
//!
//! * group orders by Todd-Coxeter coset enumeration, cross-checked against
//!   the closure of an explicit 2x2 matrix representation over a cyclotomic
//!   field ([`enumeration`], [`rep`]);
//! * abelianizations by Smith normal form ([`enumeration`]);
//! * the central-extension structure of the groups (scalar subgroup versus
//!   dihedral projective image, [`rep`]);
//! * the rewriting normal form `a^M b^N` and its soundness under the
//!   representation ([`rewrite`]);
//! * curve construction, singular-point counts and total Tjurina numbers
//!   over prime fields, and the genus formulas with their classical
//!   genus-degree cross-check ([`poly`], [`curve`]).
//!
//! The `curvegroup` binary wires these into JSON verification reports.

pub mod cli;
pub mod curve;
pub mod cyclo;
pub mod enumeration;
pub mod poly;
pub mod presentation;
pub mod rep;
pub mod report;
pub mod rewrite;
pub mod word;
