//! Machine-readable verification reports: every cross-check the toolkit can
//! run for one `(q, k)`, with exact pass flags.
//!
//! Serialized reports are deterministic byte-for-byte for fixed flags and
//! seeds; stage timings are kept out of the JSON and reported on the human
//! side only.

use serde::Serialize;
use std::time::Instant;

use crate::curve::{
    audit_with_resample, genus_degree_oracle, genus_theorem, sing_count_formula,
    tjurina_total_formula, VerifiedAudit, DEFAULT_PRIMES, MAX_RESAMPLES,
};
use crate::enumeration::{
    abelianization, todd_coxeter_with, EnumerationError, Strategy,
};
use crate::presentation::presentation_h;
use crate::rep::{build_rep, closure, extension_structure, verify_relations, ExtensionReport,
    RelationReport};

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("q must be odd and >= 3, k positive (got q={q}, k={k})")]
    BadParams { q: i64, k: i64 },
    #[error("coset enumeration hit its cap: {0}")]
    CosetCap(EnumerationError),
    #[error("matrix closure hit its cap of {0}")]
    ClosureCap(usize),
    #[error("audit failed: {0}")]
    Audit(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct AbelianizationSection {
    pub invariant_factors: Vec<String>,
    pub free_rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupSection {
    pub presentation: String,
    pub expected_order: u64,
    pub tc_order: u64,
    pub tc_order_relator_driven: u64,
    pub cosets_defined: usize,
    pub strategy: Strategy,
    pub closure_order: u64,
    pub relations: RelationReport,
    pub abelianization: AbelianizationSection,
    pub extension: ExtensionReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveSectionReport {
    pub degree: i64,
    pub expected_points: i64,
    pub expected_tjurina: i64,
    pub genus_formula: i64,
    pub genus_oracle: i64,
    pub audits: Vec<VerifiedAudit>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub q: i64,
    pub k: i64,
    pub group: GroupSection,
    pub curve: CurveSectionReport,
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// Wall-clock per stage, for the human summary only.
#[derive(Clone, Copy, Debug, Default)]
pub struct StageTimings {
    pub group_ms: u128,
    pub rep_ms: u128,
    pub curve_ms: u128,
}

#[derive(Clone, Copy, Debug)]
pub struct ReportOptions {
    pub audit_curve: bool,
    pub max_cosets: usize,
    pub closure_cap: usize,
    pub seed: u64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            audit_curve: false,
            max_cosets: 1_000_000,
            closure_cap: 10_000,
            seed: 1,
        }
    }
}

/// Runs every enabled cross-check for one `(q, k)`.
pub fn build_report(
    q: i64,
    k: i64,
    opts: &ReportOptions,
) -> Result<(VerificationReport, StageTimings), ReportError> {
    let pres = presentation_h(q, k).map_err(|_| ReportError::BadParams { q, k })?;
    let expected_order = (2 * q * (q - 1) * k) as u64;
    let mut timings = StageTimings::default();
    let mut checks: Vec<Check> = Vec::new();
    let mut check = |name: &str, pass: bool, detail: String| {
        checks.push(Check {
            name: name.to_string(),
            pass,
            detail,
        });
    };

    // Group stage: two enumeration strategies plus the abelianization.
    let t0 = Instant::now();
    let tc = todd_coxeter_with(&pres, opts.max_cosets, Strategy::DefinitionDriven)
        .map_err(ReportError::CosetCap)?;
    let tc_relator = todd_coxeter_with(&pres, opts.max_cosets, Strategy::RelatorDriven)
        .map_err(ReportError::CosetCap)?;
    let ab = abelianization(&pres);
    timings.group_ms = t0.elapsed().as_millis();

    check(
        "tc-order",
        tc.order as u64 == expected_order,
        format!("todd_coxeter = {} (expected {expected_order})", tc.order),
    );
    check(
        "strategies-agree",
        tc.order == tc_relator.order,
        format!(
            "definition-driven {} vs relator-driven {}",
            tc.order, tc_relator.order
        ),
    );
    let expected_ab = (2 * (q - 1) * k) as u64;
    check(
        "abelianization",
        ab.is_cyclic_of_order(expected_ab),
        format!(
            "invariant factors {:?}, free rank {} (expected Z/{expected_ab})",
            ab.invariant_factors, ab.free_rank
        ),
    );

    // Representation stage.
    let t1 = Instant::now();
    let (a, b) = build_rep(q, k).map_err(|e| ReportError::Audit(e.to_string()))?;
    let relations = verify_relations(&a, &b, q, k).map_err(|e| ReportError::Audit(e.to_string()))?;
    let group = closure(&[a, b], opts.closure_cap)
        .map_err(|_| ReportError::ClosureCap(opts.closure_cap))?;
    let extension = extension_structure(&group, q);
    timings.rep_ms = t1.elapsed().as_millis();

    check(
        "relations",
        relations.all_hold(),
        format!("{relations:?}"),
    );
    check(
        "closure-order",
        group.order() as u64 == expected_order,
        format!("closure = {} (expected {expected_order})", group.order()),
    );
    check(
        "orders-agree",
        tc.order == group.order(),
        format!("todd_coxeter {} vs closure {}", tc.order, group.order()),
    );
    let expected_scalars = (k * (q - 1)) as usize;
    check(
        "extension-scalars",
        extension.scalar_subgroup_order == expected_scalars
            && extension.scalar_subgroup_is_central,
        format!(
            "scalar subgroup {} central={} (expected {expected_scalars})",
            extension.scalar_subgroup_order, extension.scalar_subgroup_is_central
        ),
    );
    check(
        "extension-pgl",
        extension.pgl_image_order == (2 * q) as usize && extension.pgl_image_is_dihedral,
        format!(
            "pgl image {} dihedral={} (expected {})",
            extension.pgl_image_order,
            extension.pgl_image_is_dihedral,
            2 * q
        ),
    );

    // Curve stage: formulas always, audits on request.
    let t2 = Instant::now();
    let degree = 2 * (q - 1) * k;
    let expected_points = sing_count_formula(q, k, k);
    let expected_tjurina = tjurina_total_formula(q, k, k);
    let genus_formula = genus_theorem(q, k);
    let genus_oracle = genus_degree_oracle(degree, expected_points, (q - 1) / 2);
    check(
        "genus",
        genus_formula == genus_oracle,
        format!("formula {genus_formula} vs oracle {genus_oracle}"),
    );
    let mut audits = Vec::new();
    if opts.audit_curve {
        for prime in DEFAULT_PRIMES {
            let verified = audit_with_resample(q, k, opts.seed, prime, MAX_RESAMPLES)
                .map_err(|e| ReportError::Audit(e.to_string()))?;
            check(
                &format!("curve-audit-p{prime}"),
                verified.pass,
                format!(
                    "N={} T={} (expected N={} T={}) after {} attempt(s)",
                    verified.audit.point_count,
                    verified.audit.tjurina_total,
                    verified.expected_points,
                    verified.expected_tjurina,
                    verified.attempts
                ),
            );
            audits.push(verified);
        }
    }
    timings.curve_ms = t2.elapsed().as_millis();

    let pass = checks.iter().all(|c| c.pass);
    let report = VerificationReport {
        q,
        k,
        group: GroupSection {
            presentation: format!("H({q};{k})"),
            expected_order,
            tc_order: tc.order as u64,
            tc_order_relator_driven: tc_relator.order as u64,
            cosets_defined: tc.cosets_defined,
            strategy: tc.strategy,
            closure_order: group.order() as u64,
            relations,
            abelianization: AbelianizationSection {
                invariant_factors: ab.invariant_factors.iter().map(|d| d.to_string()).collect(),
                free_rank: ab.free_rank,
            },
            extension,
        },
        curve: CurveSectionReport {
            degree,
            expected_points,
            expected_tjurina,
            genus_formula,
            genus_oracle,
            audits,
        },
        checks,
        pass,
    };
    Ok((report, timings))
}
