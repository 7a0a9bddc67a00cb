//! The explicit 2x2 matrix representation of `H(q;k)` over a cyclotomic
//! field: generator matrices, relation checks, closure of the generated
//! group, and its central-extension structure.

mod group;
mod matrix;

pub use group::{
    build_rep, central_scalar, closure, extension_structure, rep_eval, verify_relations,
    ExtensionReport, MatrixGroup, RelationReport, RepError,
};
pub use matrix::Mat2;
