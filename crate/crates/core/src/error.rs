//! Crate-wide error type.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Evaluation was requested outside the admissible part of the disk.
    #[error("point {z} is outside the evaluation domain (|z| must be <= {max_radius})")]
    Domain { z: Complex64, max_radius: f64 },

    /// A truncated Taylor representation is too short to carry three derivatives.
    #[error("taylor representation needs at least 4 coefficients, got {got}")]
    ShortTaylor { got: usize },

    /// |h'(z)| fell below the singularity threshold.
    #[error("analytic derivative vanishes at {z} (|h'| = {magnitude:.3e})")]
    VanishingDerivative { z: Complex64, magnitude: f64 },

    /// The dilatation modulus is too close to 1 for the operator formulas.
    #[error("dilatation at {z} is too close to unit modulus (1 - |w|^2 = {margin:.3e})")]
    DilatationNearUnit { z: Complex64, margin: f64 },

    /// Non-positive Jacobian where a sense-preserving map was required.
    #[error("jacobian at {z} is non-positive ({value:.6e}); map is not sense-preserving there")]
    NonPositiveJacobian { z: Complex64, value: f64 },

    /// A finite-difference stencil would leave the evaluation domain.
    #[error("finite-difference stencil around {z} with step {step:.3e} leaves the disk")]
    StencilOutsideDisk { z: Complex64, step: f64 },

    /// Trajectory integration cannot start because the field is undefined.
    #[error("trajectory field undefined at start: |A_f({z0})| = {magnitude:.3e}")]
    TrajectoryFieldUndefined { z0: Complex64, magnitude: f64 },

    #[error("unknown catalog map '{name}'")]
    UnknownCatalog { name: String },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParam {
        name: &'static str,
        value: String,
        reason: &'static str,
    },

    #[error("invalid map descriptor: {reason}")]
    BadDescriptor { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
