//! C ABI for the curvegroup toolkit.
//!
//! Conventions:
//! * every function returns a [`CgStatus`] and writes results through out
//!   pointers;
//! * curves are opaque handles created by `cg_curve_build` /
//!   `cg_curve_zariski` and released with `cg_curve_free`;
//! * strings returned by the library are NUL-terminated, UTF-8, and must be
//!   released with `cg_string_free`;
//! * panics never cross the boundary (mapped to `CG_STATUS_INTERNAL`).
//!
//! The C header is generated into `include/curvegroup.h` at build time.

use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use curvegroup::curve::{
    audit_with_resample, curve_build, genus_general, genus_theorem, sing_count_formula,
    singularity_audit, tjurina_total_formula, zariski_quartic, AuditError, CurveInstance,
    MAX_RESAMPLES,
};
use curvegroup::enumeration::{abelianization, todd_coxeter, EnumerationError};
use curvegroup::poly::format_rational_poly;
use curvegroup::presentation::presentation_h;
use curvegroup::rep::{build_rep, closure, extension_structure, verify_relations, RepError};
use curvegroup::report::{build_report, ReportOptions};

/// Result of every API call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CgStatus {
    /// Success.
    Ok = 0,
    /// A parameter is out of range (e.g. even q, k < 1, composite prime).
    InvalidArgument = 1,
    /// A resource cap (cosets or closure size) was exceeded.
    CapExceeded = 2,
    /// The computation ran but a verification check failed.
    VerificationFailed = 3,
    /// The instance was not general enough and retries ran out.
    NonGeneral = 4,
    /// A required pointer was NULL.
    NullPointer = 5,
    /// Internal error (a bug; never expected).
    Internal = 6,
}

/// Opaque curve handle.
pub struct CgCurve {
    inner: CurveInstance,
}

fn guarded(f: impl FnOnce() -> CgStatus) -> CgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => CgStatus::Internal,
    }
}

unsafe fn write_out<T>(ptr: *mut T, value: T) -> CgStatus {
    if ptr.is_null() {
        return CgStatus::NullPointer;
    }
    unsafe { ptr.write(value) };
    CgStatus::Ok
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn cg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Releases a string allocated by this library.
///
/// # Safety
/// `s` must be a pointer previously returned by a `cg_*` function and not
/// yet freed; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn cg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Order of H(q;k) by coset enumeration over the trivial subgroup.
///
/// # Safety
/// `out_order` must be valid for a u64 write.
#[no_mangle]
pub unsafe extern "C" fn cg_group_order(
    q: i64,
    k: i64,
    max_cosets: usize,
    out_order: *mut u64,
) -> CgStatus {
    guarded(|| {
        let pres = match presentation_h(q, k) {
            Ok(p) => p,
            Err(_) => return CgStatus::InvalidArgument,
        };
        match todd_coxeter(&pres, max_cosets) {
            Ok(report) => unsafe { write_out(out_order, report.order as u64) },
            Err(EnumerationError::CapExceeded { .. }) => CgStatus::CapExceeded,
            Err(_) => CgStatus::Internal,
        }
    })
}

/// Invariant factors of the abelianization of H(q;k). Factors are written
/// in divisibility order into `out_factors` (up to `capacity`).
///
/// # Safety
/// `out_factors` must be valid for `capacity` u64 writes; `out_count` and
/// `out_free_rank` for one write each.
#[no_mangle]
pub unsafe extern "C" fn cg_abelianization(
    q: i64,
    k: i64,
    out_factors: *mut u64,
    capacity: usize,
    out_count: *mut usize,
    out_free_rank: *mut usize,
) -> CgStatus {
    guarded(|| {
        let pres = match presentation_h(q, k) {
            Ok(p) => p,
            Err(_) => return CgStatus::InvalidArgument,
        };
        let ab = abelianization(&pres);
        if out_factors.is_null() || out_count.is_null() || out_free_rank.is_null() {
            return CgStatus::NullPointer;
        }
        let n = ab.invariant_factors.len().min(capacity);
        for (i, d) in ab.invariant_factors.iter().take(n).enumerate() {
            let v = u64::try_from(d).unwrap_or(u64::MAX);
            unsafe { out_factors.add(i).write(v) };
        }
        unsafe {
            out_count.write(ab.invariant_factors.len());
            out_free_rank.write(ab.free_rank);
        }
        CgStatus::Ok
    })
}

/// Order of the matrix group generated by the 2x2 representation of
/// H(q;k), by breadth-first closure.
///
/// # Safety
/// `out_order` must be valid for a u64 write.
#[no_mangle]
pub unsafe extern "C" fn cg_closure_order(
    q: i64,
    k: i64,
    cap: usize,
    out_order: *mut u64,
) -> CgStatus {
    guarded(|| {
        let (a, b) = match build_rep(q, k) {
            Ok(p) => p,
            Err(_) => return CgStatus::InvalidArgument,
        };
        match closure(&[a, b], cap) {
            Ok(group) => unsafe { write_out(out_order, group.order() as u64) },
            Err(RepError::CapExceeded { .. }) => CgStatus::CapExceeded,
            Err(_) => CgStatus::Internal,
        }
    })
}

/// Checks the three defining matrix identities exactly. Writes a bitmask
/// (bit 0: A^2 = B^q, bit 1: B^{qk} = (B^-r A)^{2k}, bit 2: central square)
/// and fails with `CG_STATUS_VERIFICATION_FAILED` unless all three hold.
///
/// # Safety
/// `out_mask` must be valid for a u32 write (may be NULL if the mask is not
/// wanted).
#[no_mangle]
pub unsafe extern "C" fn cg_rep_relations(q: i64, k: i64, out_mask: *mut u32) -> CgStatus {
    guarded(|| {
        let (a, b) = match build_rep(q, k) {
            Ok(p) => p,
            Err(_) => return CgStatus::InvalidArgument,
        };
        let report = verify_relations(&a, &b, q, k).expect("params already validated");
        let mask = (report.square_relation as u32)
            | ((report.power_relation as u32) << 1)
            | ((report.central_relation as u32) << 2);
        if !out_mask.is_null() {
            unsafe { out_mask.write(mask) };
        }
        if report.all_hold() {
            CgStatus::Ok
        } else {
            CgStatus::VerificationFailed
        }
    })
}

/// Central-extension data of the closed matrix group: scalar subgroup
/// order, projective image order, and whether the image is dihedral with a
/// central scalar subgroup (1 or 0).
///
/// # Safety
/// All out pointers must be valid for one write each.
#[no_mangle]
pub unsafe extern "C" fn cg_extension_structure(
    q: i64,
    k: i64,
    cap: usize,
    out_scalar_order: *mut u64,
    out_pgl_order: *mut u64,
    out_dihedral: *mut u8,
    out_central: *mut u8,
) -> CgStatus {
    guarded(|| {
        let (a, b) = match build_rep(q, k) {
            Ok(p) => p,
            Err(_) => return CgStatus::InvalidArgument,
        };
        let group = match closure(&[a, b], cap) {
            Ok(g) => g,
            Err(RepError::CapExceeded { .. }) => return CgStatus::CapExceeded,
            Err(_) => return CgStatus::Internal,
        };
        if out_scalar_order.is_null()
            || out_pgl_order.is_null()
            || out_dihedral.is_null()
            || out_central.is_null()
        {
            return CgStatus::NullPointer;
        }
        let ext = extension_structure(&group, q);
        unsafe {
            out_scalar_order.write(ext.scalar_subgroup_order as u64);
            out_pgl_order.write(ext.pgl_image_order as u64);
            out_dihedral.write(ext.pgl_image_is_dihedral as u8);
            out_central.write(ext.scalar_subgroup_is_central as u8);
        }
        CgStatus::Ok
    })
}

/// Builds the curve C(q,k) from the seed and returns an owned handle.
///
/// # Safety
/// `out_curve` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn cg_curve_build(
    q: i64,
    k: i64,
    seed: u64,
    out_curve: *mut *mut CgCurve,
) -> CgStatus {
    guarded(|| match curve_build(q, k, seed) {
        Ok(inner) => {
            let handle = Box::into_raw(Box::new(CgCurve { inner }));
            unsafe { write_out(out_curve, handle) }
        }
        Err(_) => CgStatus::InvalidArgument,
    })
}

/// Returns the three-cusp quartic fixture as an owned handle.
///
/// # Safety
/// `out_curve` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn cg_curve_zariski(out_curve: *mut *mut CgCurve) -> CgStatus {
    guarded(|| {
        let handle = Box::into_raw(Box::new(CgCurve {
            inner: zariski_quartic(),
        }));
        unsafe { write_out(out_curve, handle) }
    })
}

/// Releases a curve handle.
///
/// # Safety
/// `curve` must be a handle from `cg_curve_build`/`cg_curve_zariski`, not
/// yet freed; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn cg_curve_free(curve: *mut CgCurve) {
    if !curve.is_null() {
        drop(unsafe { Box::from_raw(curve) });
    }
}

/// Degree of the curve.
///
/// # Safety
/// `curve` must be a live handle; `out_degree` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn cg_curve_degree(curve: *const CgCurve, out_degree: *mut i64) -> CgStatus {
    guarded(|| {
        if curve.is_null() {
            return CgStatus::NullPointer;
        }
        let degree = unsafe { (*curve).inner.degree };
        unsafe { write_out(out_degree, degree) }
    })
}

/// The curve equation in its text form; free with `cg_string_free`.
///
/// # Safety
/// `curve` must be a live handle; `out_text` valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn cg_curve_equation(
    curve: *const CgCurve,
    out_text: *mut *mut c_char,
) -> CgStatus {
    guarded(|| {
        if curve.is_null() {
            return CgStatus::NullPointer;
        }
        let inner = unsafe { &(*curve).inner };
        let names = inner.source.variable_names();
        let text = format_rational_poly(&inner.equation, &names);
        let c = CString::new(text).expect("no interior NUL in polynomial text");
        unsafe { write_out(out_text, c.into_raw()) }
    })
}

/// Audits the singular locus of the curve at `prime` under a chart drawn
/// from `chart_seed`: writes the distinct singular point count and the
/// total Tjurina number.
///
/// # Safety
/// `curve` must be a live handle; `out_points` and `out_tjurina` valid for
/// one write each.
#[no_mangle]
pub unsafe extern "C" fn cg_curve_audit(
    curve: *const CgCurve,
    prime: u64,
    chart_seed: u64,
    out_points: *mut u64,
    out_tjurina: *mut u64,
) -> CgStatus {
    guarded(|| {
        if curve.is_null() {
            return CgStatus::NullPointer;
        }
        if out_points.is_null() || out_tjurina.is_null() {
            return CgStatus::NullPointer;
        }
        let inner = unsafe { &(*curve).inner };
        match singularity_audit(inner, prime, chart_seed) {
            Ok(audit) => {
                unsafe {
                    out_points.write(audit.point_count as u64);
                    out_tjurina.write(audit.tjurina_total as u64);
                }
                CgStatus::Ok
            }
            Err(AuditError::NonIsolated) => CgStatus::NonGeneral,
            Err(_) => CgStatus::InvalidArgument,
        }
    })
}

/// Builds and audits C(q,k) with bounded resampling, comparing against the
/// predicted counts. `CG_STATUS_NON_GENERAL` means the retries ran out
/// without matching.
///
/// # Safety
/// `out_points` and `out_tjurina` must be valid for one write each.
#[no_mangle]
pub unsafe extern "C" fn cg_curve_audit_family(
    q: i64,
    k: i64,
    seed: u64,
    prime: u64,
    out_points: *mut u64,
    out_tjurina: *mut u64,
) -> CgStatus {
    guarded(|| {
        if out_points.is_null() || out_tjurina.is_null() {
            return CgStatus::NullPointer;
        }
        match audit_with_resample(q, k, seed, prime, MAX_RESAMPLES) {
            Ok(v) => {
                unsafe {
                    out_points.write(v.audit.point_count as u64);
                    out_tjurina.write(v.audit.tjurina_total as u64);
                }
                if v.pass {
                    CgStatus::Ok
                } else {
                    CgStatus::NonGeneral
                }
            }
            Err(AuditError::NonIsolated) => CgStatus::NonGeneral,
            Err(_) => CgStatus::InvalidArgument,
        }
    })
}

/// Predicted singular point count `(2ql - 3k) l`.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn cg_sing_count(q: i64, k: i64, l: i64, out: *mut i64) -> CgStatus {
    guarded(|| unsafe { write_out(out, sing_count_formula(q, k, l)) })
}

/// Predicted total Tjurina number.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn cg_tjurina_total(q: i64, k: i64, l: i64, out: *mut i64) -> CgStatus {
    guarded(|| unsafe { write_out(out, tjurina_total_formula(q, k, l)) })
}

/// Geometric genus of C(q,k).
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn cg_genus_theorem(q: i64, k: i64, out: *mut i64) -> CgStatus {
    guarded(|| {
        if q < 3 || q % 2 == 0 {
            return CgStatus::InvalidArgument;
        }
        unsafe { write_out(out, genus_theorem(q, k)) }
    })
}

/// Geometric genus in the general (k, l) case.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn cg_genus_general(q: i64, k: i64, l: i64, out: *mut i64) -> CgStatus {
    guarded(|| {
        if q < 3 || q % 2 == 0 {
            return CgStatus::InvalidArgument;
        }
        unsafe { write_out(out, genus_general(q, k, l)) }
    })
}

/// Runs the full verification report for (q,k) and returns it as a JSON
/// string; free with `cg_string_free`. `audit_curve` != 0 also audits the
/// curve at both default primes.
///
/// # Safety
/// `out_json` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn cg_report_json(
    q: i64,
    k: i64,
    audit_curve: u8,
    seed: u64,
    out_json: *mut *mut c_char,
) -> CgStatus {
    guarded(|| {
        let opts = ReportOptions {
            audit_curve: audit_curve != 0,
            seed,
            ..ReportOptions::default()
        };
        match build_report(q, k, &opts) {
            Ok((report, _)) => {
                let text = serde_json::to_string_pretty(&report).expect("serializable report");
                let c = CString::new(text).expect("no interior NUL in JSON");
                let status = unsafe { write_out(out_json, c.into_raw()) };
                if status != CgStatus::Ok {
                    return status;
                }
                if report.pass {
                    CgStatus::Ok
                } else {
                    CgStatus::VerificationFailed
                }
            }
            Err(curvegroup::report::ReportError::BadParams { .. }) => CgStatus::InvalidArgument,
            Err(curvegroup::report::ReportError::CosetCap(_))
            | Err(curvegroup::report::ReportError::ClosureCap(_)) => CgStatus::CapExceeded,
            Err(_) => CgStatus::Internal,
        }
    })
}
