//! Curve construction, singularity audits over prime fields, and the genus
//! formulas with their genus-degree cross-check.

mod audit;
mod build;
mod genus;

pub use audit::{
    audit_with_resample, singularity_audit, AuditError, SingularityAudit, VerifiedAudit,
    DEFAULT_PRIMES, MAX_RESAMPLES,
};
pub use build::{
    build_f, curve_build, curve_weights, zariski_quartic, CurveBuildError, CurveInstance,
    CurveSource, STXY, XI, XYZ,
};
pub use genus::{
    genus_degree_oracle, genus_general, genus_theorem, sing_count_formula, tjurina_total_formula,
};
