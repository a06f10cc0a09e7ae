//! Fixed numerical thresholds used across the crate.
//!
//! These are deliberately constants rather than knobs: every caller sees the
//! same deterministic failure behavior, and reports can cite them verbatim.

/// Operators refuse to evaluate beyond this radius; the (1 - |z|^2) factors stay
/// meaningful but stencils and quotients degenerate past it.
pub const MAX_EVAL_RADIUS: f64 = 1.0 - 1e-6;

/// |h'(z)| below this is treated as a singularity of the quotient formulas.
pub const MIN_H_PRIME: f64 = 1e-14;

/// 1 - |w(z)|^2 below this is treated as a singularity (dilatation at unit modulus).
pub const MIN_OMEGA_MARGIN: f64 = 1e-12;

/// Trajectory integration stops once |z| exceeds this radius.
pub const TRAJECTORY_BOUNDARY_RADIUS: f64 = 1.0 - 1e-4;

/// Trajectory integration stops once |A_f(z)| drops below this.
pub const TRAJECTORY_MIN_FIELD: f64 = 1e-8;
