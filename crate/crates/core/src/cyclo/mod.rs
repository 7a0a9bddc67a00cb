//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! Elements are stored in the power basis `1, zeta, ..., zeta^{phi(N)-1}`
//! of `Q[x] / Phi_N(x)`, which is canonical: equality is coordinate-wise.
//! Reduction data per conductor is computed once and cached process-wide.

mod number;
mod polynomial;

pub use number::{CycError, CycNumber, CycPhase};
pub use polynomial::{cyclotomic_polynomial, divisors, euler_phi};
