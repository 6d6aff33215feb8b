//! The Dunkl transform: radial Hankel-profile route and the rank-1
//! general-parity route.
//!
//! For radial f = F(||.||) the transform is real, even, and reduces to
//!   (F_k f)(rho) = c_k d_k ∫_0^∞ F(r) j_nu(r rho) r^{2 gamma + d - 1} dr,
//! with nu = gamma + d/2 - 1. The constant c_k d_k is pinned by the Gaussian
//! fixed point e^{-r^2/2} -> e^{-rho^2/2}, and the same operator inverts
//! itself on even profiles. In rank one a general function splits into even
//! and odd parts integrating against j_{k-1/2} and (xi y/(2k+1)) j_{k+1/2}.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bessel::{bessel_normalized, bessel_zero_estimate};
use crate::catalog::{DecayClass, RadialProfile};
use crate::error::{DunklError, Result};
use crate::measure::MultiplicitySetup;
use crate::quad::{
    cached_legendre, integrate_left_power, integrate_segmented, sum_alternating_accelerated,
    QuadratureSpec,
};
use crate::special::gamma_fn;

/// Gridded transform values with the quadrature settings that produced them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformProfile {
    pub frequencies: Vec<f64>,
    pub values: Vec<f64>,
    pub quadrature: QuadratureSpec,
}

/// Whether an operator may substitute a catalog closed form for the forward
/// transform. The numeric route is the default; the closed forms exist so
/// norm sweeps over large function families stay affordable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TransformRoute {
    Numeric,
    ClosedFormIfAvailable,
}

/// ∫_0^∞ f(r) j_nu(rho r) r^power dr with certified truncation.
///
/// Oscillation handling: once the truncated interval spans more than a few
/// Bessel periods, panels are aligned with estimated zeros of J_nu and the
/// alternating inter-zero contributions are summed directly while they
/// decay, or fed to an averaging acceleration when the envelope decays only
/// algebraically.
pub fn bessel_weighted_integral<F: Fn(f64) -> f64>(
    f: F,
    decay: DecayClass,
    breakpoints: &[f64],
    power: f64,
    nu: f64,
    rho: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if power <= -1.0 {
        return Err(DunklError::out_of_range(format!(
            "radial power {power} not integrable at the origin"
        )));
    }
    let rho = rho.abs();
    let envelope = decay.tail_mass(power, 0.0);
    if !envelope.is_finite() {
        return Err(DunklError::out_of_range(
            "decay class does not dominate the integrand power".to_string(),
        ));
    }
    let radius = {
        let target = spec.tail_tol * envelope.max(f64::MIN_POSITIVE) * 1e-3;
        decay.truncation_radius(power, target, 4.0)?
    };
    if radius == 0.0 {
        return Ok(0.0);
    }

    if rho * radius <= 40.0 {
        let value = nonoscillatory_integral(&f, &decay, breakpoints, power, nu, rho, radius, spec)?;
        certify_tail(&decay, power, radius, value.abs(), envelope, spec)?;
        return Ok(value);
    }
    oscillatory_integral(&f, &decay, breakpoints, power, nu, rho, radius, envelope, spec)
}

// Absolute error scale for tail decisions: the result size when it is
// O(envelope), or a small fraction of the envelope mass when oscillatory
// cancellation makes the result itself tiny.
fn tail_scale(value: f64, envelope: f64) -> f64 {
    value.abs().max(1e-2 * envelope).max(f64::MIN_POSITIVE)
}

fn certify_tail(
    decay: &DecayClass,
    power: f64,
    radius: f64,
    value: f64,
    envelope: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let bound = decay.tail_mass(power, radius);
    let tol = spec.tail_tol * tail_scale(value, envelope) * 10.0;
    if bound > tol {
        return Err(DunklError::TailBoundExceeded {
            bound,
            tolerance: tol,
            radius,
        });
    }
    Ok(bound)
}

#[allow(clippy::too_many_arguments)]
fn nonoscillatory_integral<F: Fn(f64) -> f64>(
    f: &F,
    decay: &DecayClass,
    breakpoints: &[f64],
    power: f64,
    nu: f64,
    rho: f64,
    radius: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let mut breaks: Vec<f64> = breakpoints.to_vec();
    // resolve mild oscillation explicitly
    if rho * radius > 6.0 {
        let step = 3.0 / rho;
        let mut b = step;
        while b < radius {
            breaks.push(b);
            b += step;
        }
    }
    // geometric ladder for slowly decaying tails
    if let DecayClass::Algebraic { onset, .. } = decay {
        let mut b = onset.max(1.0);
        while b < radius {
            breaks.push(b);
            b *= 2.0;
        }
    }
    let first = crate::quad::head_panel_end(&breaks, radius);
    let g = |r: f64| f(r) * bessel_normalized(nu, rho * r).unwrap_or(f64::NAN);
    let head = integrate_left_power(&g, first, power, spec)?;
    let rest = integrate_segmented(
        |r| g(r) * r.powf(power),
        first,
        radius,
        &breaks,
        spec,
        head.abs(),
    )?;
    Ok(head + rest)
}

#[allow(clippy::too_many_arguments)]
fn oscillatory_integral<F: Fn(f64) -> f64>(
    f: &F,
    decay: &DecayClass,
    breakpoints: &[f64],
    power: f64,
    nu: f64,
    rho: f64,
    radius: f64,
    envelope: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    const HEAD_ZEROS: usize = 8;
    const MAX_ZEROS: usize = 1400;
    const ACCEL_TERMS: usize = 32;

    let g = |r: f64| f(r) * bessel_normalized(nu, rho * r).unwrap_or(f64::NAN) * r.powf(power);

    let head_end = (bessel_zero_estimate(nu, HEAD_ZEROS) / rho).min(radius);
    let mut head_breaks: Vec<f64> = breakpoints.to_vec();
    for m in 1..HEAD_ZEROS {
        head_breaks.push(bessel_zero_estimate(nu, m) / rho);
    }
    let first = crate::quad::head_panel_end(&head_breaks, head_end).min(1.0 / rho);
    let gf = |r: f64| f(r) * bessel_normalized(nu, rho * r).unwrap_or(f64::NAN);
    let head = integrate_left_power(&gf, first, power, spec)?
        + integrate_segmented(&g, first, head_end, &head_breaks, spec, 0.0)?;

    if head_end >= radius {
        return Ok(head);
    }

    // inter-zero panels
    let rule = cached_legendre(spec.nodes_per_panel.max(16))?;
    let mut terms: Vec<f64> = Vec::new();
    let mut running = head;
    let mut term_peak = 0.0f64;
    let mut lo = head_end;
    let mut idx = HEAD_ZEROS;
    let mut finished = false;
    while idx < MAX_ZEROS {
        idx += 1;
        let hi = (bessel_zero_estimate(nu, idx) / rho).min(radius);
        if hi <= lo {
            continue;
        }
        // split panels that still contain a catalog breakpoint
        let mut term = 0.0;
        let mut seg_lo = lo;
        let mut inner: Vec<f64> = breakpoints
            .iter()
            .copied()
            .filter(|&b| b > lo && b < hi)
            .collect();
        inner.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        inner.push(hi);
        for b in inner {
            term += rule.integrate(seg_lo, b, &g);
            seg_lo = b;
        }
        terms.push(term);
        running += term;
        term_peak = term_peak.max(term.abs());
        lo = hi;
        if hi >= radius {
            finished = true;
            break;
        }
        // a zero prefix (support not reached yet) must not stop the sweep
        if term_peak > 0.0
            && term.abs() <= 0.05 * spec.tail_tol * tail_scale(running, envelope)
            && terms.len() >= 4
        {
            finished = true;
            break;
        }
    }

    if finished {
        certify_tail_oscillatory(
            decay,
            power,
            lo,
            radius,
            terms.last(),
            running,
            envelope,
            spec,
        )?;
        return Ok(running);
    }

    // envelope decays too slowly to finish directly: accelerate the
    // alternating tail built from the most recent panels
    let split = terms.len() - ACCEL_TERMS.min(terms.len());
    let direct: f64 = terms[..split].iter().sum();
    let (accel, accel_err) = sum_alternating_accelerated(&terms[split..]);
    let total = head + direct + accel;
    let scale = tail_scale(total, envelope);
    if accel_err > 100.0 * spec.tail_tol * scale {
        return Err(DunklError::QuadratureNotConverged {
            delta: accel_err / scale,
            tolerance: 100.0 * spec.tail_tol,
        });
    }
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn certify_tail_oscillatory(
    decay: &DecayClass,
    power: f64,
    reached: f64,
    radius: f64,
    last_term: Option<&f64>,
    value: f64,
    envelope: f64,
    spec: &QuadratureSpec,
) -> Result<()> {
    if reached >= radius {
        // truncated at the certified radius; the envelope bound applies
        certify_tail(decay, power, radius, value, envelope, spec)?;
        return Ok(());
    }
    // stopped early because alternating terms became negligible; the
    // remainder of an alternating series is bounded by its next term
    let last = last_term.copied().unwrap_or(0.0).abs();
    let tol = spec.tail_tol * tail_scale(value, envelope);
    if last > tol {
        return Err(DunklError::TailBoundExceeded {
            bound: last,
            tolerance: tol,
            radius: reached,
        });
    }
    Ok(())
}

/// Order of the Bessel kernel in the radial transform: gamma + d/2 - 1.
pub fn radial_bessel_order(setup: &MultiplicitySetup) -> f64 {
    setup.gamma() + 0.5 * setup.dim() as f64 - 1.0
}

/// Radial Dunkl transform of a catalog profile at frequency `rho`.
pub fn dunkl_transform_radial(
    setup: &MultiplicitySetup,
    profile: &RadialProfile,
    rho: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let nu = radial_bessel_order(setup);
    let m = setup.effective_dim() - 1.0;
    let v = bessel_weighted_integral(
        |r| profile.eval(r),
        profile.decay(),
        &profile.breakpoints(),
        m,
        nu,
        rho,
        spec,
    )?;
    Ok(setup.mehta_constant() * setup.sphere_constant() * v)
}

/// Inverse radial transform: identical kernel and constant (the radial
/// transform is self-inverse on real even profiles).
pub fn inverse_transform_radial<G: Fn(f64) -> f64>(
    setup: &MultiplicitySetup,
    transformed: G,
    decay: DecayClass,
    breakpoints: &[f64],
    r: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let nu = radial_bessel_order(setup);
    let m = setup.effective_dim() - 1.0;
    let v = bessel_weighted_integral(transformed, decay, breakpoints, m, nu, r, spec)?;
    Ok(setup.mehta_constant() * setup.sphere_constant() * v)
}

/// Evaluate the transform on a frequency grid.
pub fn transform_profile(
    setup: &MultiplicitySetup,
    profile: &RadialProfile,
    frequencies: &[f64],
    spec: &QuadratureSpec,
) -> Result<TransformProfile> {
    let values = frequencies
        .iter()
        .map(|&rho| dunkl_transform_radial(setup, profile, rho, spec))
        .collect::<Result<Vec<f64>>>()?;
    Ok(TransformProfile {
        frequencies: frequencies.to_vec(),
        values,
        quadrature: *spec,
    })
}

/// Closed-form transform values for profiles whose transform is elementary.
pub fn transform_closed_form(
    setup: &MultiplicitySetup,
    profile: &RadialProfile,
    rho: f64,
) -> Option<f64> {
    let e = setup.gamma() + 0.5 * setup.dim() as f64;
    match *profile {
        RadialProfile::Gaussian { a } => {
            Some((2.0 * a).powf(-e) * (-rho * rho / (4.0 * a)).exp())
        }
        RadialProfile::PolyGaussian { c0, c2, a } => {
            let base = (2.0 * a).powf(-e) * (-rho * rho / (4.0 * a)).exp();
            Some(base * (c0 + c2 * (e / a - rho * rho / (4.0 * a * a))))
        }
        RadialProfile::Exponential { a } => {
            let g = setup.gamma();
            let d = setup.dim() as f64;
            let c = 2f64.powf(g + 0.5 * d) * gamma_fn(g + 0.5 * (d + 1.0))
                / std::f64::consts::PI.sqrt();
            let dd = setup.effective_dim();
            Some(c * a.powf(-dd) * (1.0 + (rho / a).powi(2)).powf(-(g + 0.5 * (d + 1.0))))
        }
        _ => None,
    }
}

/// Decay class of the transform of a catalog profile (used when a transform
/// profile feeds a second integral).
pub fn transform_decay(setup: &MultiplicitySetup, profile: &RadialProfile) -> Option<DecayClass> {
    let e = setup.gamma() + 0.5 * setup.dim() as f64;
    match *profile {
        RadialProfile::Gaussian { a } => Some(DecayClass::Gaussian {
            rate: 1.0 / (4.0 * a),
            amplitude: (2.0 * a).powf(-e),
        }),
        RadialProfile::PolyGaussian { c0, c2, a } => {
            let base = (2.0 * a).powf(-e);
            let amp = base
                * (c0.abs()
                    + c2.abs() * e / a
                    + c2.abs() / (4.0 * a * a) * 8.0 * a / std::f64::consts::E);
            Some(DecayClass::Gaussian {
                rate: 1.0 / (8.0 * a),
                amplitude: amp,
            })
        }
        RadialProfile::Exponential { a } => {
            let g = setup.gamma();
            let d = setup.dim() as f64;
            let c = 2f64.powf(g + 0.5 * d) * gamma_fn(g + 0.5 * (d + 1.0))
                / std::f64::consts::PI.sqrt();
            Some(DecayClass::Algebraic {
                exponent: 2.0 * g + d + 1.0,
                amplitude: c * a,
                onset: a,
            })
        }
        _ => None,
    }
}

/// Rank-1 Dunkl transform of a general (not necessarily even) function.
/// The even part lands in the real component, the odd part in the imaginary
/// one with the paper-normalized sign.
pub fn dunkl_transform_1d<F: Fn(f64) -> f64>(
    k: f64,
    f: F,
    decay: DecayClass,
    breakpoints: &[f64],
    xi: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let setup = MultiplicitySetup::rank1(k)?;
    let ck = setup.mehta_constant();
    let even = |y: f64| 0.5 * (f(y) + f(-y));
    let odd = |y: f64| 0.5 * (f(y) - f(-y));
    let re = 2.0
        * ck
        * bessel_weighted_integral(even, decay, breakpoints, 2.0 * k, k - 0.5, xi, spec)?;
    let im = -2.0 * ck * xi / (2.0 * k + 1.0)
        * bessel_weighted_integral(odd, decay, breakpoints, 2.0 * k + 1.0, k + 0.5, xi, spec)?;
    Ok(Complex64::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn gaussian_fixed_point() {
        for (d, ks) in [
            (1usize, vec![0.0]),
            (1, vec![0.5]),
            (1, vec![1.0]),
            (2, vec![0.5, 0.5]),
            (2, vec![0.3, 1.2]),
        ] {
            let s = MultiplicitySetup::new(d, ks).unwrap();
            let f = RadialProfile::Gaussian { a: 0.5 };
            for &rho in &[0.0, 0.5, 1.5, 4.0] {
                let t = dunkl_transform_radial(&s, &f, rho, &spec()).unwrap();
                assert_relative_eq!(t, (-0.5 * rho * rho).exp(), max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn exponential_pair_matches_closed_form() {
        // F_k(e^{-|.|})(rho) = c_{d,k} (1 + rho^2)^{-(gamma + (d+1)/2)}
        for &k in &[0.0, 0.5, 1.0] {
            let s = MultiplicitySetup::rank1(k).unwrap();
            let f = RadialProfile::Exponential { a: 1.0 };
            for &rho in &[0.0, 0.3, 1.0, 4.0, 10.0] {
                let got = dunkl_transform_radial(&s, &f, rho, &spec()).unwrap();
                let want = transform_closed_form(&s, &f, rho).unwrap();
                assert_relative_eq!(got, want, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn closed_form_constant_examples() {
        // c_{1,0} = sqrt(2/pi)
        let s = MultiplicitySetup::rank1(0.0).unwrap();
        let t0 = transform_closed_form(&s, &RadialProfile::Exponential { a: 1.0 }, 0.0).unwrap();
        assert_relative_eq!(t0, (2.0 / PI).sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn poly_gaussian_closed_form_agrees_with_quadrature() {
        let s = MultiplicitySetup::rank1(0.5).unwrap();
        let f = RadialProfile::PolyGaussian {
            c0: 1.0,
            c2: 0.8,
            a: 0.5,
        };
        for &rho in &[0.0, 0.7, 2.0] {
            let got = dunkl_transform_radial(&s, &f, rho, &spec()).unwrap();
            let want = transform_closed_form(&s, &f, rho).unwrap();
            assert_relative_eq!(got, want, max_relative = 1e-9);
        }
    }

    #[test]
    fn scaling_law() {
        // F(lambda r) -> lambda^{-(2 gamma + d)} (F_k F)(rho / lambda)
        let s = MultiplicitySetup::rank1(0.7).unwrap();
        let f = RadialProfile::Exponential { a: 1.0 };
        let lambda = 2.0;
        let fl = f.dilate(lambda);
        for &rho in &[0.5, 2.0] {
            let lhs = dunkl_transform_radial(&s, &fl, rho, &spec()).unwrap();
            let rhs = lambda.powf(-s.effective_dim())
                * dunkl_transform_radial(&s, &f, rho / lambda, &spec()).unwrap();
            assert_relative_eq!(lhs, rhs, max_relative = 1e-9);
        }
    }

    #[test]
    fn rank1_transform_even_function_is_real() {
        let f = |y: f64| (-0.5 * y * y).exp();
        let t = dunkl_transform_1d(
            0.5,
            f,
            DecayClass::Gaussian {
                rate: 0.5,
                amplitude: 1.0,
            },
            &[],
            1.3,
            &spec(),
        )
        .unwrap();
        assert!(t.im.abs() < 1e-12);
        assert_relative_eq!(t.re, (-0.5 * 1.3f64 * 1.3).exp(), max_relative = 1e-9);
    }

    #[test]
    fn rank1_transform_classical_exponential() {
        // k = 0: F(e^{-|.|})(xi) = sqrt(2/pi)/(1+xi^2)
        let f = |y: f64| (-y.abs()).exp();
        for &xi in &[0.0, 0.8, 3.0] {
            let t = dunkl_transform_1d(
                0.0,
                f,
                DecayClass::Exponential {
                    rate: 1.0,
                    amplitude: 1.0,
                },
                &[],
                xi,
                &spec(),
            )
            .unwrap();
            assert_relative_eq!(
                t.re,
                (2.0 / PI).sqrt() / (1.0 + xi * xi),
                max_relative = 1e-9
            );
            assert!(t.im.abs() < 1e-12);
        }
    }

    #[test]
    fn rank1_transform_odd_gaussian() {
        // k = 0, f(y) = y e^{-y^2/2}: transform is -i xi e^{-xi^2/2}
        let f = |y: f64| y * (-0.5 * y * y).exp();
        for &xi in &[0.4, 1.0, 2.5] {
            let t = dunkl_transform_1d(
                0.0,
                f,
                DecayClass::Gaussian {
                    rate: 0.25,
                    amplitude: 2.0,
                },
                &[],
                xi,
                &spec(),
            )
            .unwrap();
            assert!(t.re.abs() < 1e-12, "re = {}", t.re);
            assert_relative_eq!(t.im, -xi * (-0.5 * xi * xi).exp(), max_relative = 1e-9);
        }
    }

    #[test]
    fn radial_route_agrees_with_rank1_route() {
        for &k in &[0.0, 0.5, 1.0] {
            let s = MultiplicitySetup::rank1(k).unwrap();
            let profile = RadialProfile::Gaussian { a: 1.0 };
            for &rho in &[0.1, 1.0, 5.0, 10.0] {
                let radial = dunkl_transform_radial(&s, &profile, rho, &spec()).unwrap();
                let general = dunkl_transform_1d(
                    k,
                    |y| profile.eval(y),
                    profile.decay(),
                    &[],
                    rho,
                    &spec(),
                )
                .unwrap();
                assert_relative_eq!(radial, general.re, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn inverse_round_trip_on_gaussian() {
        let s = MultiplicitySetup::rank1(0.5).unwrap();
        let f = RadialProfile::Gaussian { a: 0.5 };
        let decay = transform_decay(&s, &f).unwrap();
        for &r in &[0.0, 0.7, 2.0] {
            let back = inverse_transform_radial(
                &s,
                |rho| dunkl_transform_radial(&s, &f, rho, &spec()).unwrap(),
                decay,
                &[],
                r,
                &spec(),
            )
            .unwrap();
            assert_relative_eq!(back, f.eval(r), max_relative = 1e-8);
        }
    }

    #[test]
    fn inverse_round_trip_on_exponential_profile() {
        // forward via the closed-form pair, inverse numerically
        let s = MultiplicitySetup::rank1(0.5).unwrap();
        let f = RadialProfile::Exponential { a: 1.0 };
        let decay = transform_decay(&s, &f).unwrap();
        for &r in &[0.4, 1.0, 2.3] {
            let back = inverse_transform_radial(
                &s,
                |rho| transform_closed_form(&s, &f, rho).unwrap(),
                decay,
                &[],
                r,
                &spec(),
            )
            .unwrap();
            assert_relative_eq!(back, f.eval(r), max_relative = 1e-6);
        }
    }

    #[test]
    fn inverse_is_linear() {
        let s = MultiplicitySetup::rank1(0.3).unwrap();
        let f1 = RadialProfile::Gaussian { a: 0.5 };
        let f2 = RadialProfile::Gaussian { a: 2.0 };
        // envelope must dominate the sum: take the slower rate, summed amplitudes
        let combined = DecayClass::Gaussian {
            rate: 1.0 / 8.0,
            amplitude: 3.0,
        };
        let r = 0.9;
        let lhs = inverse_transform_radial(
            &s,
            |rho| {
                transform_closed_form(&s, &f1, rho).unwrap()
                    + 2.0 * transform_closed_form(&s, &f2, rho).unwrap()
            },
            combined,
            &[],
            r,
            &spec(),
        )
        .unwrap();
        assert_relative_eq!(lhs, f1.eval(r) + 2.0 * f2.eval(r), max_relative = 1e-8);
    }

    #[test]
    fn transform_sup_bounded_by_l1_norm() {
        // |F_k f| <= ||f||_{1,k} pointwise (c_k-normalized transform)
        for &k in &[0.0, 0.5, 1.0] {
            let s = MultiplicitySetup::rank1(k).unwrap();
            for f in [
                RadialProfile::Gaussian { a: 0.5 },
                RadialProfile::Exponential { a: 1.0 },
                RadialProfile::BallIndicator { radius: 1.0 },
            ] {
                let l1 = s.radial_integral(&f, &spec()).unwrap();
                for &rho in &[0.0, 0.5, 2.0, 7.0] {
                    let t = dunkl_transform_radial(&s, &f, rho, &spec()).unwrap();
                    assert!(
                        t.abs() <= s.mehta_constant() * l1 * (1.0 + 1e-9),
                        "bound violated at k={k}, rho={rho}"
                    );
                }
            }
        }
    }

    #[test]
    fn ball_indicator_transform_large_frequency() {
        // oscillatory path: compare against the half-integer closed form at
        // k = 0, d = 1: transform of chi_[0,1) is sqrt(2/pi) sin(rho)/rho
        let s = MultiplicitySetup::rank1(0.0).unwrap();
        let f = RadialProfile::BallIndicator { radius: 1.0 };
        for &rho in &[55.0, 120.0] {
            let got = dunkl_transform_radial(&s, &f, rho, &spec()).unwrap();
            let want = (2.0 / PI).sqrt() * rho.sin() / rho;
            assert_relative_eq!(got, want, epsilon = 1e-10, max_relative = 1e-7);
        }
    }
}
