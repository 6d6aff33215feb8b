//! Dunkl harmonic analysis on R^d for the reflection group Z_2^d.
//!
//! The crate provides the weighted measure machinery (weights, Mehta-type
//! constant, radial integration), the rank-1 Dunkl kernel and transform,
//! generalized translations, Riesz potentials with two independent
//! evaluation routes, decreasing rearrangements with Hardy-type two-weight
//! conditions, and Dunkl gradients with weighted Sobolev checks.

pub mod bessel;
pub mod catalog;
pub mod error;
pub mod kernel;
pub mod measure;
pub mod quad;
pub mod rearrange;
pub mod hardy;
pub mod riesz;
pub mod special;
pub mod translation;
pub mod transform;

pub use catalog::{DecayClass, Parity, RadialProfile, SmoothFunction};
pub use error::{DunklError, Result};
pub use measure::MultiplicitySetup;
pub use quad::QuadratureSpec;
pub use transform::{TransformProfile, TransformRoute};
