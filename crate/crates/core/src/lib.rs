//! Numerical toolkit for sense-preserving planar harmonic mappings
//! f = h + conj(g) on the unit disk.
//!
//! The crate computes the pre-Schwarzian P_f, the disk operator
//! A_f = ((1-|z|^2)/2) P_f - conj(z), and the harmonic Schwarzian S_f;
//! estimates the lower order inf |A_f| and upper order sup |A_f| with honest
//! sampled-extremum semantics; integrates the level-set trajectory ODE
//! z'(t) = (1 - |z|^2)/(2 t A_f(z)); verifies the hyperbolic distortion bounds
//! on (1-|z|^2) J_f^{1/2}; and runs sampled convexity/concavity criteria.

pub mod analytic;
pub mod catalog;
pub mod criteria;
pub mod error;
pub mod geometry;
pub mod harmonic;
pub mod jet;
pub mod limits;
pub mod operators;
pub mod order;
pub mod wire;

pub use analytic::{AnalyticFunction, DiskAutomorphism};
pub use error::{Error, Result};
pub use harmonic::{AffineMap, HarmonicMap, KoebeTransformResult};
pub use jet::Jet3;

pub type Complex = num_complex::Complex64;
