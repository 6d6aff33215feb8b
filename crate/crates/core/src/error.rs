//! Error taxonomy shared by all modules.

use thiserror::Error;

/// Errors produced by the numerical operators.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum DunklError {
    /// The analytic tail bound at the truncation radius exceeds the requested
    /// tolerance, so the integral cannot be certified.
    #[error("tail bound {bound:.3e} exceeds tolerance {tolerance:.3e} at truncation radius {radius:.3e}")]
    TailBoundExceeded {
        bound: f64,
        tolerance: f64,
        radius: f64,
    },

    /// Bessel order below -1/2 is outside the supported range.
    #[error("unsupported Bessel order {order}; need order >= -1/2")]
    UnsupportedOrder { order: f64 },

    /// A scale parameter that must be strictly positive was not.
    #[error("parameter {name} must be positive, got {value}")]
    NonpositiveScale { name: &'static str, value: f64 },

    /// The Riesz exponent is outside (0, 2*gamma + d).
    #[error("alpha = {alpha} outside the admissible range (0, {limit})")]
    AlphaOutOfRange { alpha: f64, limit: f64 },

    /// A Lebesgue/weight exponent combination outside its admissible range.
    #[error("parameter out of range: {what}")]
    ParameterOutOfRange { what: String },

    /// Negative argument where a non-negative one is required.
    #[error("argument {name} must be non-negative, got {value}")]
    NegativeArgument { name: &'static str, value: f64 },

    /// Radial cells handed to the rearrangement engine overlap.
    #[error("radial cells overlap near r = {radius}")]
    OverlappingCells { radius: f64 },

    /// A multiplicity vector failed validation.
    #[error("invalid multiplicity setup: {what}")]
    InvalidSetup { what: String },

    /// Quadrature refinement hit its depth limit before reaching tolerance.
    #[error("quadrature did not converge: last delta {delta:.3e} vs tolerance {tolerance:.3e}")]
    QuadratureNotConverged { delta: f64, tolerance: f64 },
}

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, DunklError>;

impl DunklError {
    pub(crate) fn out_of_range(what: impl Into<String>) -> Self {
        DunklError::ParameterOutOfRange { what: what.into() }
    }
}
