//! Singular-point counts and geometric genus of the curve family, together
//! with the classical genus-degree cross-check.

/// Number of singular points of the family member with parameters
/// `(q, k, l)` in the `p = m = 2` case: `(2ql - 3k) l`.
pub fn sing_count_formula(q: i64, k: i64, l: i64) -> i64 {
    (2 * q * l - 3 * k) * l
}

/// Total Tjurina number: every singular point has type `A_{q-1}` with local
/// Tjurina number `q - 1`.
pub fn tjurina_total_formula(q: i64, k: i64, l: i64) -> i64 {
    sing_count_formula(q, k, l) * (q - 1)
}

/// Geometric genus of `C(q,k)` (the `l = k` case), `r = (q-1)/2`:
/// `1 - 6kr + k^2 r + 4 k^2 r^2`.
pub fn genus_theorem(q: i64, k: i64) -> i64 {
    let r = (q - 1) / 2;
    1 - 6 * k * r + k * k * r + 4 * k * k * r * r
}

/// Geometric genus in the general `p = m = 2` case.
pub fn genus_general(q: i64, k: i64, l: i64) -> i64 {
    let r = (q - 1) / 2;
    1 + 3 * k + 2 * k * k - 3 * l - 4 * k * l + 2 * l * l - 6 * l * r - 5 * k * l * r
        + 6 * l * l * r
        + 4 * l * l * r * r
}

/// Classical genus-degree formula for a plane curve of degree `d` with `n`
/// isolated singular points of delta invariant `delta` each:
/// `(d-1)(d-2)/2 - n * delta`. For an `A_{q-1}` point with q odd (local
/// form `u^2 = v^q`), `delta = (q-1)/2`.
pub fn genus_degree_oracle(degree: i64, sing_count: i64, delta_per_point: i64) -> i64 {
    (degree - 1) * (degree - 2) / 2 - sing_count * delta_per_point
}
