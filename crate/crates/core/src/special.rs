//! Thin wrappers over the gamma-family special functions.
//!
//! Everything here delegates to `statrs`; the wrappers exist so the rest of
//! the crate has one import point and so the tail-bound helpers live next to
//! the functions they are built from.

use statrs::function::gamma;

/// Euler gamma function.
pub fn gamma_fn(x: f64) -> f64 {
    gamma::gamma(x)
}

/// Natural log of the gamma function.
pub fn ln_gamma(x: f64) -> f64 {
    gamma::ln_gamma(x)
}

/// Upper incomplete gamma function Γ(a, x) = ∫_x^∞ t^{a-1} e^{-t} dt.
pub fn upper_incomplete_gamma(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return gamma::gamma(a);
    }
    gamma::gamma_ur(a, x) * gamma::gamma(a)
}

/// Beta function B(a, b).
pub fn beta_fn(a: f64, b: f64) -> f64 {
    (ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)).exp()
}

/// Tail mass ∫_R^∞ r^m e^{-c r^p} dr for p ∈ {1, 2}, expressed through the
/// upper incomplete gamma function. Used by the truncation-radius logic.
pub fn power_exp_tail(m: f64, c: f64, p: f64, radius: f64) -> f64 {
    debug_assert!(c > 0.0 && radius >= 0.0);
    // substitute u = c r^p
    let a = (m + 1.0) / p;
    let scale = c.powf(-a) / p;
    scale * upper_incomplete_gamma(a, c * radius.powf(p))
}
