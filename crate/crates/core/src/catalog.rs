//! The function catalog: radial profiles and smooth d-dimensional entries.
//!
//! Every profile carries a decay class used for analytic tail bounds, the
//! radii where it is non-smooth (quadrature breakpoints), and - when the
//! profile is monotone - the closed-form data the rearrangement module needs.

use serde::{Deserialize, Serialize};

use crate::error::{DunklError, Result};
use crate::special::power_exp_tail;

/// Tail behaviour of a radial profile, used for truncation estimates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DecayClass {
    /// Identically zero beyond `radius`.
    CompactSupport { radius: f64 },
    /// |F(r)| <= amplitude * e^{-rate r} for large r.
    Exponential { rate: f64, amplitude: f64 },
    /// |F(r)| <= amplitude * e^{-rate r^2} for large r.
    Gaussian { rate: f64, amplitude: f64 },
    /// |F(r)| <= amplitude * r^{-exponent} for r >= onset.
    Algebraic {
        exponent: f64,
        amplitude: f64,
        onset: f64,
    },
}

impl DecayClass {
    /// Upper bound for ∫_R^∞ r^m |F(r)| dr (infinite when not integrable).
    pub fn tail_mass(&self, m: f64, radius: f64) -> f64 {
        match *self {
            DecayClass::CompactSupport { radius: r0 } => {
                if radius >= r0 {
                    0.0
                } else {
                    // crude: amplitude 1 over the remaining support
                    let hi = r0.max(radius);
                    (hi.powf(m + 1.0) - radius.powf(m + 1.0)) / (m + 1.0)
                }
            }
            DecayClass::Exponential { rate, amplitude } => {
                amplitude * power_exp_tail(m, rate, 1.0, radius)
            }
            DecayClass::Gaussian { rate, amplitude } => {
                amplitude * power_exp_tail(m, rate, 2.0, radius)
            }
            DecayClass::Algebraic {
                exponent,
                amplitude,
                onset,
            } => {
                let r = radius.max(onset);
                let p = m - exponent;
                if p >= -1.0 {
                    f64::INFINITY
                } else {
                    amplitude * r.powf(p + 1.0) / (-p - 1.0)
                }
            }
        }
    }

    /// Smallest radius (searched over doublings) whose tail mass is below
    /// `abs_tol`, starting from `start`.
    pub fn truncation_radius(&self, m: f64, abs_tol: f64, start: f64) -> Result<f64> {
        if let DecayClass::CompactSupport { radius } = *self {
            return Ok(radius);
        }
        let mut r = start.max(1.0);
        for _ in 0..120 {
            let bound = self.tail_mass(m, r);
            if bound <= abs_tol {
                return Ok(r);
            }
            r *= 1.5;
        }
        Err(DunklError::TailBoundExceeded {
            bound: self.tail_mass(m, r),
            tolerance: abs_tol,
            radius: r,
        })
    }
}

/// Catalog of radial profiles F with f(x) = F(||x||).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RadialProfile {
    /// e^{-a r^2}
    Gaussian { a: f64 },
    /// e^{-a r}
    Exponential { a: f64 },
    /// characteristic function of [0, radius)
    BallIndicator { radius: f64 },
    /// e * exp(-1 / (1 - (r/radius)^2)) on [0, radius), 0 outside; C^∞, equals 1 at r=0
    Bump { radius: f64 },
    /// (c0 + c2 r^2) e^{-a r^2}
    PolyGaussian { c0: f64, c2: f64, a: f64 },
    /// piecewise constant: values[i] on [breaks[i], breaks[i+1]), zero beyond
    Step { breaks: Vec<f64>, values: Vec<f64> },
}

impl RadialProfile {
    pub fn eval(&self, r: f64) -> f64 {
        let r = r.abs();
        match self {
            RadialProfile::Gaussian { a } => (-a * r * r).exp(),
            RadialProfile::Exponential { a } => (-a * r).exp(),
            RadialProfile::BallIndicator { radius } => {
                if r < *radius {
                    1.0
                } else {
                    0.0
                }
            }
            RadialProfile::Bump { radius } => {
                let u = r / radius;
                if u < 1.0 {
                    (1.0 - 1.0 / (1.0 - u * u)).exp()
                } else {
                    0.0
                }
            }
            RadialProfile::PolyGaussian { c0, c2, a } => (c0 + c2 * r * r) * (-a * r * r).exp(),
            RadialProfile::Step { breaks, values } => {
                for (i, v) in values.iter().enumerate() {
                    if r >= breaks[i] && r < breaks[i + 1] {
                        return *v;
                    }
                }
                0.0
            }
        }
    }

    /// Radial derivative F'(r) for the smooth entries; `None` for profiles
    /// with jumps.
    pub fn derivative(&self, r: f64) -> Option<f64> {
        let r = r.abs();
        match self {
            RadialProfile::Gaussian { a } => Some(-2.0 * a * r * (-a * r * r).exp()),
            RadialProfile::Exponential { a } => Some(-a * (-a * r).exp()),
            RadialProfile::PolyGaussian { c0, c2, a } => {
                let e = (-a * r * r).exp();
                Some((2.0 * c2 * r - 2.0 * a * r * (c0 + c2 * r * r)) * e)
            }
            RadialProfile::Bump { radius } => {
                let u = r / radius;
                if u < 1.0 {
                    let g = 1.0 - u * u;
                    let val = (1.0 - 1.0 / g).exp();
                    Some(val * (-2.0 * u / (g * g)) / radius)
                } else {
                    Some(0.0)
                }
            }
            RadialProfile::BallIndicator { .. } | RadialProfile::Step { .. } => None,
        }
    }

    pub fn decay(&self) -> DecayClass {
        match self {
            RadialProfile::Gaussian { a } => DecayClass::Gaussian {
                rate: *a,
                amplitude: 1.0,
            },
            RadialProfile::Exponential { a } => DecayClass::Exponential {
                rate: *a,
                amplitude: 1.0,
            },
            RadialProfile::BallIndicator { radius } | RadialProfile::Bump { radius } => {
                DecayClass::CompactSupport { radius: *radius }
            }
            RadialProfile::PolyGaussian { c0, c2, a } => DecayClass::Gaussian {
                // |c0 + c2 r^2| e^{-a r^2} <= amp * e^{-a r^2 / 2}
                rate: 0.5 * a,
                amplitude: amplitude_bound(*c0, *c2, *a),
            },
            RadialProfile::Step { breaks, .. } => DecayClass::CompactSupport {
                radius: *breaks.last().unwrap_or(&0.0),
            },
        }
    }

    /// Radii where the profile or its derivative jumps.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            RadialProfile::BallIndicator { radius } | RadialProfile::Bump { radius } => {
                vec![*radius]
            }
            RadialProfile::Step { breaks, .. } => breaks.clone(),
            _ => Vec::new(),
        }
    }

    /// sup |F|; exact for the catalog entries.
    pub fn sup(&self) -> f64 {
        match self {
            RadialProfile::Gaussian { .. }
            | RadialProfile::Exponential { .. }
            | RadialProfile::BallIndicator { .. }
            | RadialProfile::Bump { .. } => 1.0,
            RadialProfile::PolyGaussian { c0, c2, a } => {
                // max over r of |c0 + c2 r^2| e^{-a r^2}; scan critical points
                let mut best = c0.abs();
                if *a > 0.0 && *c2 != 0.0 {
                    let r2 = (1.0 / a - c0 / c2).max(0.0);
                    best = best.max(((c0 + c2 * r2) * (-a * r2).exp()).abs());
                }
                best
            }
            RadialProfile::Step { values, .. } => {
                values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
            }
        }
    }

    /// For strictly decreasing profiles: the radius where F crosses level s
    /// (the inverse of F). Returns `None` for non-monotone entries.
    pub fn superlevel_radius(&self, s: f64) -> Option<f64> {
        if s <= 0.0 {
            return None;
        }
        match self {
            RadialProfile::Gaussian { a } => {
                if s >= 1.0 {
                    Some(0.0)
                } else {
                    Some(((1.0 / s).ln() / a).sqrt())
                }
            }
            RadialProfile::Exponential { a } => {
                if s >= 1.0 {
                    Some(0.0)
                } else {
                    Some((1.0 / s).ln() / a)
                }
            }
            RadialProfile::BallIndicator { radius } => {
                if s < 1.0 {
                    Some(*radius)
                } else {
                    Some(0.0)
                }
            }
            _ => None,
        }
    }

    /// Dilated profile r ↦ F(lambda r).
    pub fn dilate(&self, lambda: f64) -> RadialProfile {
        match self {
            RadialProfile::Gaussian { a } => RadialProfile::Gaussian {
                a: a * lambda * lambda,
            },
            RadialProfile::Exponential { a } => RadialProfile::Exponential { a: a * lambda },
            RadialProfile::BallIndicator { radius } => RadialProfile::BallIndicator {
                radius: radius / lambda,
            },
            RadialProfile::Bump { radius } => RadialProfile::Bump {
                radius: radius / lambda,
            },
            RadialProfile::PolyGaussian { c0, c2, a } => RadialProfile::PolyGaussian {
                c0: *c0,
                c2: c2 * lambda * lambda,
                a: a * lambda * lambda,
            },
            RadialProfile::Step { breaks, values } => RadialProfile::Step {
                breaks: breaks.iter().map(|b| b / lambda).collect(),
                values: values.clone(),
            },
        }
    }
}

fn amplitude_bound(c0: f64, c2: f64, a: f64) -> f64 {
    // |c0 + c2 r^2| e^{-a r^2} <= (|c0| + |c2| sup r^2 e^{-a r^2/2}) e^{-a r^2/2}
    c0.abs() + c2.abs() * 2.0 / (a * std::f64::consts::E)
}

/// Per-coordinate parity of a function on R^d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

/// Smooth catalog entries with exact partial derivatives, used by the Dunkl
/// operators and the Sobolev checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SmoothFunction {
    /// e^{-a ||x||^2}
    RadialGaussian { a: f64 },
    /// smooth bump of ||x||
    RadialBump { radius: f64 },
    /// coordinate monomial x_j
    Coordinate { j: usize },
    /// x_j^2
    CoordinateSquare { j: usize },
    /// x_j e^{-a ||x||^2}
    OddGaussian { j: usize, a: f64 },
}

impl SmoothFunction {
    pub fn value(&self, x: &[f64]) -> f64 {
        let r2: f64 = x.iter().map(|t| t * t).sum();
        match self {
            SmoothFunction::RadialGaussian { a } => (-a * r2).exp(),
            SmoothFunction::RadialBump { radius } => {
                RadialProfile::Bump { radius: *radius }.eval(r2.sqrt())
            }
            SmoothFunction::Coordinate { j } => x[*j],
            SmoothFunction::CoordinateSquare { j } => x[*j] * x[*j],
            SmoothFunction::OddGaussian { j, a } => x[*j] * (-a * r2).exp(),
        }
    }

    pub fn partial(&self, j: usize, x: &[f64]) -> f64 {
        let r2: f64 = x.iter().map(|t| t * t).sum();
        match self {
            SmoothFunction::RadialGaussian { a } => -2.0 * a * x[j] * (-a * r2).exp(),
            SmoothFunction::RadialBump { radius } => {
                let r = r2.sqrt();
                if r == 0.0 {
                    return 0.0;
                }
                let dr = RadialProfile::Bump { radius: *radius }
                    .derivative(r)
                    .expect("bump is smooth");
                dr * x[j] / r
            }
            SmoothFunction::Coordinate { j: cj } => {
                if j == *cj {
                    1.0
                } else {
                    0.0
                }
            }
            SmoothFunction::CoordinateSquare { j: cj } => {
                if j == *cj {
                    2.0 * x[j]
                } else {
                    0.0
                }
            }
            SmoothFunction::OddGaussian { j: cj, a } => {
                let e = (-a * r2).exp();
                if j == *cj {
                    (1.0 - 2.0 * a * x[j] * x[j]) * e
                } else {
                    -2.0 * a * x[j] * x[*cj] * e
                }
            }
        }
    }

    /// Parity with respect to flipping coordinate `j`.
    pub fn parity(&self, j: usize) -> Parity {
        match self {
            SmoothFunction::RadialGaussian { .. } | SmoothFunction::RadialBump { .. } => {
                Parity::Even
            }
            SmoothFunction::Coordinate { j: cj }
            | SmoothFunction::CoordinateSquare { j: cj }
            | SmoothFunction::OddGaussian { j: cj, .. } => {
                if j == *cj {
                    match self {
                        SmoothFunction::CoordinateSquare { .. } => Parity::Even,
                        _ => Parity::Odd,
                    }
                } else {
                    Parity::Even
                }
            }
        }
    }
}
