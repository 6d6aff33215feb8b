//! Reflection-group setup, weight function, measure constants and radial
//! integration against the weighted measure.
//!
//! The root system is fixed to Z_2^d, so the weight is the coordinate
//! product w_k(x) = prod_j |x_j|^{2 k_j}, the index is gamma = sum k_j, and
//! every radial integral reduces to one dimension through
//! ∫ f dnu_k = d_k ∫_0^∞ F(r) r^{2 gamma + d - 1} dr.

use serde::{Deserialize, Serialize};

use crate::catalog::{DecayClass, RadialProfile};
use crate::error::{DunklError, Result};
use crate::quad::{integrate_left_power, integrate_segmented, QuadratureSpec};
use crate::special::gamma_fn;

/// The ambient weighted space: dimension, multiplicities and the derived
/// constants gamma, c_k (Mehta-type) and d_k (weighted sphere mass).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplicitySetup {
    d: usize,
    k: Vec<f64>,
    gamma: f64,
    mehta: f64,
    sphere: f64,
}

impl MultiplicitySetup {
    pub fn new(d: usize, k: Vec<f64>) -> Result<Self> {
        if d == 0 {
            return Err(DunklError::InvalidSetup {
                what: "dimension must be positive".into(),
            });
        }
        if k.len() != d {
            return Err(DunklError::InvalidSetup {
                what: format!("expected {d} multiplicities, got {}", k.len()),
            });
        }
        if let Some(bad) = k.iter().find(|&&kj| !(kj >= 0.0) || !kj.is_finite()) {
            return Err(DunklError::InvalidSetup {
                what: format!("multiplicities must be finite and >= 0, got {bad}"),
            });
        }
        let gamma: f64 = k.iter().sum();
        // c_k^{-1} = prod_j 2^{k_j + 1/2} Gamma(k_j + 1/2)
        let mehta_inv: f64 = k
            .iter()
            .map(|&kj| 2f64.powf(kj + 0.5) * gamma_fn(kj + 0.5))
            .product();
        let mehta = 1.0 / mehta_inv;
        let half = 0.5 * d as f64;
        let sphere = mehta_inv / (2f64.powf(gamma + half - 1.0) * gamma_fn(gamma + half));
        Ok(MultiplicitySetup {
            d,
            k,
            gamma,
            mehta,
            sphere,
        })
    }

    /// One-dimensional setup with a single multiplicity.
    pub fn rank1(k: f64) -> Result<Self> {
        MultiplicitySetup::new(1, vec![k])
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn multiplicities(&self) -> &[f64] {
        &self.k
    }

    /// gamma = sum_j k_j
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Mehta-type constant c_k with c_k^{-1} = ∫ e^{-||x||^2/2} w_k dx.
    pub fn mehta_constant(&self) -> f64 {
        self.mehta
    }

    /// Weighted surface mass d_k = c_k^{-1} / (2^{gamma+d/2-1} Gamma(gamma+d/2)).
    pub fn sphere_constant(&self) -> f64 {
        self.sphere
    }

    /// The homogeneous dimension 2 gamma + d.
    pub fn effective_dim(&self) -> f64 {
        2.0 * self.gamma + self.d as f64
    }

    /// w_k(x) = prod_j |x_j|^{2 k_j}; 0^0 is taken as 1.
    pub fn weight(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.d, "point dimension mismatch");
        x.iter()
            .zip(&self.k)
            .map(|(&xj, &kj)| weight_1d(kj, xj))
            .product()
    }

    /// nu_k-mass of the ball B(0, r): d_k r^{2 gamma + d} / (2 gamma + d).
    pub fn ball_mass(&self, r: f64) -> f64 {
        let dd = self.effective_dim();
        self.sphere * r.powf(dd) / dd
    }

    /// Inverse of `ball_mass`: the radius whose ball carries mass `t`.
    pub fn ball_radius(&self, t: f64) -> f64 {
        let dd = self.effective_dim();
        (t * dd / self.sphere).powf(1.0 / dd)
    }

    /// ∫ f dnu_k for radial f = F(||.||), via the one-dimensional reduction.
    pub fn radial_integral(&self, profile: &RadialProfile, spec: &QuadratureSpec) -> Result<f64> {
        self.radial_integral_fn(
            |r| profile.eval(r),
            profile.decay(),
            &profile.breakpoints(),
            0.0,
            spec,
        )
    }

    /// General radial engine: d_k ∫_0^∞ f(r) r^{2 gamma + d - 1 + power_offset} dr
    /// with truncation certified by the decay class.
    pub fn radial_integral_fn<F: Fn(f64) -> f64>(
        &self,
        f: F,
        decay: DecayClass,
        breakpoints: &[f64],
        power_offset: f64,
        spec: &QuadratureSpec,
    ) -> Result<f64> {
        let m = self.effective_dim() - 1.0 + power_offset;
        if m <= -1.0 {
            return Err(DunklError::out_of_range(format!(
                "radial power {m} is not integrable at the origin"
            )));
        }
        let radius = decay.truncation_radius(m, f64::MIN_POSITIVE, 8.0)?;
        let head = self.radial_power_integral(&f, m, radius, breakpoints, spec)?;
        // certify: tail bound must be small relative to the result
        let tail = decay.tail_mass(m, radius);
        let scale = head.abs().max(f64::MIN_POSITIVE);
        if tail > spec.tail_tol * scale {
            // try to push the radius once more before giving up
            let radius2 = decay.truncation_radius(m, spec.tail_tol * scale, radius)?;
            let head2 = self.radial_power_integral(&f, m, radius2, breakpoints, spec)?;
            let tail2 = decay.tail_mass(m, radius2);
            if tail2 > spec.tail_tol * head2.abs().max(f64::MIN_POSITIVE) {
                return Err(DunklError::TailBoundExceeded {
                    bound: tail2,
                    tolerance: spec.tail_tol * head2.abs().max(f64::MIN_POSITIVE),
                    radius: radius2,
                });
            }
            return Ok(self.sphere * head2);
        }
        Ok(self.sphere * head)
    }

    fn radial_power_integral<F: Fn(f64) -> f64>(
        &self,
        f: &F,
        m: f64,
        radius: f64,
        breakpoints: &[f64],
        spec: &QuadratureSpec,
    ) -> Result<f64> {
        // first panel absorbs the (possibly fractional) power r^m at 0
        let first = crate::quad::head_panel_end(breakpoints, radius);
        let head = integrate_left_power(|r| f(r), first, m, spec)?;
        let rest = integrate_segmented(
            |r| f(r) * r.powf(m),
            first,
            radius,
            breakpoints,
            spec,
            head.abs(),
        )?;
        Ok(head + rest)
    }

    /// ∫ e^{-s ||y||^2} dnu_k(y) = c_k^{-1} (2s)^{-(gamma + d/2)}.
    pub fn gaussian_mass(&self, s: f64) -> Result<f64> {
        if !(s > 0.0) {
            return Err(DunklError::NonpositiveScale {
                name: "s",
                value: s,
            });
        }
        let exponent = self.gamma + 0.5 * self.d as f64;
        Ok((2.0 * s).powf(-exponent) / self.mehta)
    }
}

/// |t|^{2k} with the 0^0 = 1 convention.
pub fn weight_1d(k: f64, t: f64) -> f64 {
    if k == 0.0 {
        1.0
    } else {
        t.abs().powf(2.0 * k)
    }
}

/// ∫_0^R g(t) t^{2k} dt with the fractional power absorbed at the origin.
/// Building block for tensor cross-checks of the radial reduction.
pub fn integrate_weighted_line<F: Fn(f64) -> f64>(
    g: F,
    two_k: f64,
    radius: f64,
    breakpoints: &[f64],
    spec: &QuadratureSpec,
    scale_hint: f64,
) -> Result<f64> {
    let first = crate::quad::head_panel_end(breakpoints, radius);
    let head = integrate_left_power(|t| g(t), first, two_k, spec)?;
    let rest = integrate_segmented(
        |t| g(t) * t.powf(two_k),
        first,
        radius,
        breakpoints,
        spec,
        head.abs().max(scale_hint),
    )?;
    Ok(head + rest)
}
