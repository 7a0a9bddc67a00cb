//! Finite-quotient machinery: coset enumeration over the trivial subgroup
//! (group orders) and Smith normal form (abelianizations).

mod coset;
mod snf;

pub use coset::{todd_coxeter, todd_coxeter_with, CosetTable, EnumerationError, Strategy, TcReport};
pub use snf::{abelianization, smith_normal_form, AbelianStructure, IntMatrix, SmithDecomposition};
