#ifndef CURVEGROUP_H
#define CURVEGROUP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every API call.
 */
typedef enum {
  /**
   * Success.
   */
  CG_STATUS_OK = 0,
  /**
   * A parameter is out of range (e.g. even q, k < 1, composite prime).
   */
  CG_STATUS_INVALID_ARGUMENT = 1,
  /**
   * A resource cap (cosets or closure size) was exceeded.
   */
  CG_STATUS_CAP_EXCEEDED = 2,
  /**
   * The computation ran but a verification check failed.
   */
  CG_STATUS_VERIFICATION_FAILED = 3,
  /**
   * The instance was not general enough and retries ran out.
   */
  CG_STATUS_NON_GENERAL = 4,
  /**
   * A required pointer was NULL.
   */
  CG_STATUS_NULL_POINTER = 5,
  /**
   * Internal error (a bug; never expected).
   */
  CG_STATUS_INTERNAL = 6,
} CgStatus;

/**
 * Opaque curve handle.
 */
typedef struct CgCurve CgCurve;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *cg_version(void);

/**
 * Releases a string allocated by this library.
 *
 * # Safety
 * `s` must be a pointer previously returned by a `cg_*` function and not
 * yet freed; NULL is ignored.
 */
void cg_string_free(char *s);

/**
 * Order of H(q;k) by coset enumeration over the trivial subgroup.
 *
 * # Safety
 * `out_order` must be valid for a u64 write.
 */
CgStatus cg_group_order(int64_t q, int64_t k, uintptr_t max_cosets, uint64_t *out_order);

/**
 * Invariant factors of the abelianization of H(q;k). Factors are written
 * in divisibility order into `out_factors` (up to `capacity`).
 *
 * # Safety
 * `out_factors` must be valid for `capacity` u64 writes; `out_count` and
 * `out_free_rank` for one write each.
 */
CgStatus cg_abelianization(int64_t q,
                           int64_t k,
                           uint64_t *out_factors,
                           uintptr_t capacity,
                           uintptr_t *out_count,
                           uintptr_t *out_free_rank);

/**
 * Order of the matrix group generated by the 2x2 representation of
 * H(q;k), by breadth-first closure.
 *
 * # Safety
 * `out_order` must be valid for a u64 write.
 */
CgStatus cg_closure_order(int64_t q, int64_t k, uintptr_t cap, uint64_t *out_order);

/**
 * Checks the three defining matrix identities exactly. Writes a bitmask
 * (bit 0: A^2 = B^q, bit 1: B^{qk} = (B^-r A)^{2k}, bit 2: central square)
 * and fails with `CG_STATUS_VERIFICATION_FAILED` unless all three hold.
 *
 * # Safety
 * `out_mask` must be valid for a u32 write (may be NULL if the mask is not
 * wanted).
 */
CgStatus cg_rep_relations(int64_t q, int64_t k, uint32_t *out_mask);

/**
 * Central-extension data of the closed matrix group: scalar subgroup
 * order, projective image order, and whether the image is dihedral with a
 * central scalar subgroup (1 or 0).
 *
 * # Safety
 * All out pointers must be valid for one write each.
 */
CgStatus cg_extension_structure(int64_t q,
                                int64_t k,
                                uintptr_t cap,
                                uint64_t *out_scalar_order,
                                uint64_t *out_pgl_order,
                                uint8_t *out_dihedral,
                                uint8_t *out_central);

/**
 * Builds the curve C(q,k) from the seed and returns an owned handle.
 *
 * # Safety
 * `out_curve` must be valid for one pointer write.
 */
CgStatus cg_curve_build(int64_t q, int64_t k, uint64_t seed, CgCurve **out_curve);

/**
 * Returns the three-cusp quartic fixture as an owned handle.
 *
 * # Safety
 * `out_curve` must be valid for one pointer write.
 */
CgStatus cg_curve_zariski(CgCurve **out_curve);

/**
 * Releases a curve handle.
 *
 * # Safety
 * `curve` must be a handle from `cg_curve_build`/`cg_curve_zariski`, not
 * yet freed; NULL is ignored.
 */
void cg_curve_free(CgCurve *curve);

/**
 * Degree of the curve.
 *
 * # Safety
 * `curve` must be a live handle; `out_degree` valid for one write.
 */
CgStatus cg_curve_degree(const CgCurve *curve, int64_t *out_degree);

/**
 * The curve equation in its text form; free with `cg_string_free`.
 *
 * # Safety
 * `curve` must be a live handle; `out_text` valid for one pointer write.
 */
CgStatus cg_curve_equation(const CgCurve *curve, char **out_text);

/**
 * Audits the singular locus of the curve at `prime` under a chart drawn
 * from `chart_seed`: writes the distinct singular point count and the
 * total Tjurina number.
 *
 * # Safety
 * `curve` must be a live handle; `out_points` and `out_tjurina` valid for
 * one write each.
 */
CgStatus cg_curve_audit(const CgCurve *curve,
                        uint64_t prime,
                        uint64_t chart_seed,
                        uint64_t *out_points,
                        uint64_t *out_tjurina);

/**
 * Builds and audits C(q,k) with bounded resampling, comparing against the
 * predicted counts. `CG_STATUS_NON_GENERAL` means the retries ran out
 * without matching.
 *
 * # Safety
 * `out_points` and `out_tjurina` must be valid for one write each.
 */
CgStatus cg_curve_audit_family(int64_t q,
                               int64_t k,
                               uint64_t seed,
                               uint64_t prime,
                               uint64_t *out_points,
                               uint64_t *out_tjurina);

/**
 * Predicted singular point count `(2ql - 3k) l`.
 *
 * # Safety
 * `out` must be valid for one write.
 */
CgStatus cg_sing_count(int64_t q, int64_t k, int64_t l, int64_t *out);

/**
 * Predicted total Tjurina number.
 *
 * # Safety
 * `out` must be valid for one write.
 */
CgStatus cg_tjurina_total(int64_t q, int64_t k, int64_t l, int64_t *out);

/**
 * Geometric genus of C(q,k).
 *
 * # Safety
 * `out` must be valid for one write.
 */
CgStatus cg_genus_theorem(int64_t q, int64_t k, int64_t *out);

/**
 * Geometric genus in the general (k, l) case.
 *
 * # Safety
 * `out` must be valid for one write.
 */
CgStatus cg_genus_general(int64_t q, int64_t k, int64_t l, int64_t *out);

/**
 * Runs the full verification report for (q,k) and returns it as a JSON
 * string; free with `cg_string_free`. `audit_curve` != 0 also audits the
 * curve at both default primes.
 *
 * # Safety
 * `out_json` must be valid for one pointer write.
 */
CgStatus cg_report_json(int64_t q, int64_t k, uint8_t audit_curve, uint64_t seed, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CURVEGROUP_H */
