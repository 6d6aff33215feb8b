//! Dunkl translation of radial functions.
//!
//! In rank one the translation of a radial function is an average over the
//! probability density c_k^B (1+t)(1-t^2)^{k-1} on (-1, 1), evaluated at the
//! argument A(x,y,t) = sqrt(x^2 + y^2 - 2xyt). The substitution t = 1 - 2u^2
//! turns A into sqrt((x-y)^2 + 4xy u^2), which is smooth in u even at x = y,
//! and maps the density to 2^{2k+1} u^{2k-1} (1-u)^k (1+u)^k du on (0, 1).
//! Both endpoint powers are absorbed into Gauss-Jacobi panels.
//!
//! Gaussians translate in closed form through the kernel identity
//! tau_x(e^{-s||.||^2})(y) = e^{-s(||x||^2+||y||^2)} E_k(2sx, y), which works
//! in any dimension and doubles as the acceptance arbiter for the rank-1
//! density, its normalization and the kernel itself.

use crate::catalog::RadialProfile;
use crate::error::{DunklError, Result};
use crate::kernel::dunkl_kernel_1d_scaled;
use crate::measure::{integrate_weighted_line, MultiplicitySetup};
use crate::quad::{
    integrate_left_power, integrate_right_power, integrate_segmented, QuadratureSpec,
};
use crate::special::gamma_fn;

/// Normalization of the rank-1 translation density:
/// c_k^B = Gamma(k+1/2) / (sqrt(pi) Gamma(k)).
pub fn density_constant(k: f64) -> f64 {
    gamma_fn(k + 0.5) / (std::f64::consts::PI.sqrt() * gamma_fn(k))
}

/// tau_x f(y) for radial f = F(|.|) in rank one.
///
/// k = 0 degenerates to the classical F(|x-y|); x = 0 or y = 0 gives
/// F evaluated at the other radius (the density is a probability measure).
/// Ball indicators take the dedicated incomplete-mass path.
pub fn translate_radial(
    k: f64,
    profile: &RadialProfile,
    x: f64,
    y: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if let RadialProfile::BallIndicator { radius } = profile {
        return translate_ball_indicator(k, *radius, x, y);
    }
    translate_radial_fn(k, |r| profile.eval(r), &profile.breakpoints(), x, y, spec)
}

/// tau_x chi_{B(0,r)}(y): the density mass of {t : A(x,y,t) < r}. With
/// t = 2 tau - 1 the mass is a regularized incomplete Beta value, so the
/// evaluation is closed-form and cheap enough for nested quadratures
/// (maximal ball averages).
pub fn translate_ball_indicator(k: f64, radius: f64, x: f64, y: f64) -> Result<f64> {
    if k < 0.0 {
        return Err(DunklError::out_of_range(format!(
            "multiplicity k = {k} must be >= 0"
        )));
    }
    if !(radius > 0.0) {
        return Err(DunklError::NegativeArgument {
            name: "radius",
            value: radius,
        });
    }
    if k == 0.0 {
        return Ok(if (x - y).abs() < radius { 1.0 } else { 0.0 });
    }
    let xy = x * y;
    if xy == 0.0 {
        return Ok(if x * x + y * y < radius * radius {
            1.0
        } else {
            0.0
        });
    }
    // A^2 = x^2 + y^2 - 2xy t; A < radius on one side of the crossing t*
    let t_star = (x * x + y * y - radius * radius) / (2.0 * xy);
    let tail = if t_star <= -1.0 {
        1.0
    } else if t_star >= 1.0 {
        0.0
    } else {
        // ∫_{t*}^1 (1-t)^{k-1}(1+t)^k dt relative to the full density mass
        // equals 1 - I_{tau*}(k+1, k) with tau* = (1+t*)/2
        1.0 - statrs::function::beta::beta_reg(k + 1.0, k, 0.5 * (1.0 + t_star))
    };
    if xy > 0.0 {
        // A decreasing in t: inside the ball iff t > t*
        Ok(tail)
    } else {
        // A increasing in t: inside iff t < t*
        Ok(1.0 - tail)
    }
}

/// Same as [`translate_radial`] for a raw profile closure with known
/// non-smooth radii.
pub fn translate_radial_fn<F: Fn(f64) -> f64>(
    k: f64,
    profile: F,
    profile_breaks: &[f64],
    x: f64,
    y: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if k < 0.0 {
        return Err(DunklError::out_of_range(format!(
            "multiplicity k = {k} must be >= 0"
        )));
    }
    if k == 0.0 {
        return Ok(profile((x - y).abs()));
    }
    let xy = x * y;
    if xy == 0.0 {
        return Ok(profile((x * x + y * y).sqrt()));
    }

    let arg = |u: f64| ((x - y) * (x - y) + 4.0 * xy * u * u).max(0.0).sqrt();

    // images of profile breakpoints in the u variable
    let mut cuts: Vec<f64> = Vec::new();
    for &b in profile_breaks {
        let u2 = (b * b - (x - y) * (x - y)) / (4.0 * xy);
        if u2 > 0.0 && u2 < 1.0 {
            cuts.push(u2.sqrt());
        }
    }
    cuts.push(0.5);
    cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite cuts"));
    cuts.dedup();

    // integrate u^{2k-1} (1-u)^k (1+u)^k F(A(u)) over (0,1) piecewise
    let smooth = |u: f64| (1.0 - u).powf(k) * (1.0 + u).powf(k) * profile(arg(u));
    let mut total = 0.0;
    // leading piece absorbs u^{2k-1}
    let first = cuts[0];
    total += integrate_left_power(&smooth, first, 2.0 * k - 1.0, spec)?;
    // interior pieces
    let mut lo = first;
    for &c in &cuts[1..] {
        total += integrate_segmented(
            |u| u.powf(2.0 * k - 1.0) * smooth(u),
            lo,
            c,
            &[],
            spec,
            total.abs(),
        )?;
        lo = c;
    }
    // trailing piece absorbs (1-u)^k
    total += integrate_right_power(
        |u| u.powf(2.0 * k - 1.0) * (1.0 + u).powf(k) * profile(arg(u)),
        lo,
        1.0,
        k,
        spec,
    )?;

    Ok(density_constant(k) * 2f64.powf(2.0 * k + 1.0) * total)
}

/// tau_x(e^{-s||.||^2})(y) through the kernel identity; valid in any
/// dimension and always in (0, 1].
pub fn translate_gaussian(
    setup: &MultiplicitySetup,
    s: f64,
    x: &[f64],
    y: &[f64],
) -> Result<f64> {
    if !(s > 0.0) {
        return Err(DunklError::NonpositiveScale { name: "s", value: s });
    }
    assert_eq!(x.len(), setup.dim());
    assert_eq!(y.len(), setup.dim());
    // e^{-s(|x|^2+|y|^2)} E_k(2sx, y) = prod_j e^{-s(|x_j|-|y_j|)^2} scaledE_j
    let mut value = 1.0;
    for ((&xj, &yj), &kj) in x.iter().zip(y).zip(setup.multiplicities()) {
        let gap = xj.abs() - yj.abs();
        value *= (-s * gap * gap).exp() * dunkl_kernel_1d_scaled(kj, 2.0 * s * xj, yj)?;
    }
    Ok(value)
}

/// Rank-1 shortcut for [`translate_gaussian`].
pub fn translate_gaussian_1d(k: f64, s: f64, x: f64, y: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(DunklError::NonpositiveScale { name: "s", value: s });
    }
    let gap = x.abs() - y.abs();
    Ok((-s * gap * gap).exp() * dunkl_kernel_1d_scaled(k, 2.0 * s * x, y)?)
}

/// Both sides of the translation-invariance of the total mass:
/// (∫ tau_x f dnu_k, ∫ f dnu_k), each computed independently.
pub fn translation_mass_check(
    setup: &MultiplicitySetup,
    profile: &RadialProfile,
    x: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    if setup.dim() != 1 {
        return Err(DunklError::out_of_range(
            "pointwise radial translation is rank-1 only".to_string(),
        ));
    }
    let k = setup.multiplicities()[0];
    let rhs = setup.radial_integral(profile, spec)?;

    // |tau_x f(y)| decays once ||y| - |x|| leaves the support/decay range
    let decay = profile.decay();
    let m = setup.effective_dim() - 1.0;
    let reach = decay.truncation_radius(m, spec.tail_tol * rhs.abs() * 1e-2, 4.0)?;
    let ymax = x.abs() + reach;
    let mut breaks: Vec<f64> = Vec::new();
    for &b in &profile.breakpoints() {
        for cand in [(x.abs() - b).abs(), x.abs() + b, b - x.abs()] {
            if cand > 0.0 && cand < ymax {
                breaks.push(cand);
            }
        }
    }
    // ∫_R tau_x f(y) |y|^{2k} dy, folding the two half-lines together
    let lhs = integrate_weighted_line(
        |y| {
            translate_radial(k, profile, x, y, spec).unwrap_or(f64::NAN)
                + translate_radial(k, profile, x, -y, spec).unwrap_or(f64::NAN)
        },
        2.0 * k,
        ymax,
        &breaks,
        spec,
        rhs.abs(),
    )?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use crate::quad::cached_jacobi;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn density_normalizes_to_one() {
        // translate the constant profile: must return 1 for any (x, y)
        let one = RadialProfile::Step {
            breaks: vec![0.0, 1e9],
            values: vec![1.0],
        };
        for &k in &[0.1, 0.5, 1.0, 3.0] {
            for &(x, y) in &[(0.5, 0.4), (1.0, 1.0), (2.0, -3.0)] {
                let v = translate_radial(k, &one, x, y, &spec()).unwrap();
                assert_relative_eq!(v, 1.0, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn classical_limit_translates_by_shift() {
        let f = RadialProfile::Gaussian { a: 1.0 };
        for &(x, y) in &[(0.3, 1.0), (2.0, -1.0)] {
            let v = translate_radial(0.0, &f, x, y, &spec()).unwrap();
            assert_relative_eq!(v, f.eval((x - y).abs()), max_relative = 1e-14);
        }
    }

    #[test]
    fn translation_at_origin_is_identity() {
        let f = RadialProfile::Exponential { a: 1.0 };
        for &k in &[0.3, 1.0] {
            for &y in &[0.0, 0.7, -2.5] {
                let v = translate_radial(k, &f, 0.0, y, &spec()).unwrap();
                assert_relative_eq!(v, f.eval(y.abs()), max_relative = 1e-14);
            }
        }
    }

    #[test]
    fn argument_range_respects_orbit_hull() {
        // min(|x-y|, |x+y|) <= A(x,y,u) <= max(|x-y|, |x+y|)
        for &(x, y) in &[(0.5f64, 2.0f64), (-1.0, 1.5), (3.0, 3.0)] {
            let lo = (x - y).abs().min((x + y).abs());
            let hi = (x - y).abs().max((x + y).abs());
            for i in 0..=100 {
                let u = i as f64 / 100.0;
                let a = ((x - y) * (x - y) + 4.0 * x * y * u * u).sqrt();
                assert!(a >= lo - 1e-12 && a <= hi + 1e-12);
            }
        }
    }

    #[test]
    fn radial_translation_is_symmetric_in_base_points() {
        let f = RadialProfile::Gaussian { a: 0.7 };
        for &k in &[0.4, 1.2] {
            for &(x, y) in &[(0.5, 1.7), (2.0, 0.3)] {
                let a = translate_radial(k, &f, x, y, &spec()).unwrap();
                let b = translate_radial(k, &f, y, x, &spec()).unwrap();
                assert_relative_eq!(a, b, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn gaussian_identity_cross_check() {
        // rank-1 quadrature against the kernel identity; this single check
        // gates the density shape, its constant and the kernel at once
        for &k in &[0.3, 0.7, 1.5] {
            for &s in &[0.5, 2.0] {
                for &x in &[0.5, 1.0, 3.0] {
                    for &y in &[0.5, 1.0, 3.0, -1.0] {
                        let f = RadialProfile::Gaussian { a: s };
                        let lhs = translate_radial(k, &f, x, y, &spec()).unwrap();
                        let rhs = translate_gaussian_1d(k, s, x, y).unwrap();
                        assert_relative_eq!(lhs, rhs, max_relative = 1e-8);
                    }
                }
            }
        }
    }

    #[test]
    fn gaussian_translation_bounded_by_one() {
        let setup = MultiplicitySetup::new(2, vec![0.3, 1.0]).unwrap();
        for &s in &[0.1, 1.0, 10.0] {
            for &c in &[0.2, 1.0, 4.9] {
                let x = [c, -0.5 * c];
                let y = [0.3 * c, c];
                let v = translate_gaussian(&setup, s, &x, &y).unwrap();
                assert!(v > 0.0 && v <= 1.0 + 1e-14, "v = {v}");
            }
        }
    }

    #[test]
    fn classical_gaussian_translation() {
        let setup = MultiplicitySetup::new(2, vec![0.0, 0.0]).unwrap();
        let x = [1.0, -0.5];
        let y = [0.2, 0.7];
        let s = 0.8;
        let dist2: f64 = x.iter().zip(&y).map(|(a, b)| (a - b) * (a - b)).sum();
        let v = translate_gaussian(&setup, s, &x, &y).unwrap();
        assert_relative_eq!(v, (-s * dist2).exp(), max_relative = 1e-12);
    }

    #[test]
    fn gaussian_mass_is_translation_invariant() {
        // ∫ tau_x g_s dnu = gaussian_mass(s) independently of x
        let setup = MultiplicitySetup::rank1(0.7).unwrap();
        let s = 0.8;
        let f = RadialProfile::Gaussian { a: s };
        for &x in &[0.0, 2.0] {
            let (lhs, rhs) = translation_mass_check(&setup, &f, x, &spec()).unwrap();
            assert_relative_eq!(lhs, rhs, max_relative = 1e-8);
            assert_relative_eq!(rhs, setup.gaussian_mass(s).unwrap(), max_relative = 1e-10);
        }
    }

    #[test]
    fn ball_indicator_mass_is_preserved() {
        let setup = MultiplicitySetup::rank1(0.5).unwrap();
        let f = RadialProfile::BallIndicator { radius: 1.0 };
        // the translated indicator has fractional-power edges; 1e-9 panel
        // tolerance is plenty for the 1e-8 comparison
        let q = QuadratureSpec {
            rel_tol: 1e-9,
            ..spec()
        };
        let (lhs, rhs) = translation_mass_check(&setup, &f, 1.0, &q).unwrap();
        assert_relative_eq!(rhs, setup.ball_mass(1.0), max_relative = 1e-12);
        assert_relative_eq!(lhs, rhs, max_relative = 1e-8);
    }

    #[test]
    fn rejects_nonpositive_scale() {
        let setup = MultiplicitySetup::rank1(0.5).unwrap();
        assert!(matches!(
            translate_gaussian(&setup, 0.0, &[1.0], &[1.0]),
            Err(DunklError::NonpositiveScale { .. })
        ));
    }

    #[test]
    fn contraction_in_l1_and_l2() {
        let setup = MultiplicitySetup::rank1(0.6).unwrap();
        let k = 0.6;
        let f = RadialProfile::Gaussian { a: 1.0 };
        let x = 1.3;
        let q = spec();
        // p = 1, f >= 0: equality with ||f||_1 by mass preservation
        let (lhs, rhs) = translation_mass_check(&setup, &f, x, &q).unwrap();
        assert_relative_eq!(lhs, rhs, max_relative = 1e-8);
        // p = 2: strict contraction away from x = 0
        let tau_sq = integrate_weighted_line(
            |y| {
                translate_radial(k, &f, x, y, &q).unwrap().powi(2)
                    + translate_radial(k, &f, x, -y, &q).unwrap().powi(2)
            },
            2.0 * k,
            x.abs() + 12.0,
            &[],
            &q,
            0.0,
        )
        .unwrap();
        let f_sq = integrate_weighted_line(
            |y| 2.0 * f.eval(y).powi(2),
            2.0 * k,
            12.0,
            &[],
            &q,
            0.0,
        )
        .unwrap();
        assert!(tau_sq < f_sq, "||tau_x f||_2^2 = {tau_sq} vs {f_sq}");
    }

    #[test]
    fn density_constant_matches_jacobi_rule_mass() {
        // c_k^B * ∫ (1-t)^{k-1}(1+t)^k dt = 1
        for &k in &[0.2, 0.5, 1.0, 3.0] {
            let rule = cached_jacobi(48, k - 1.0, k).unwrap();
            let mass: f64 = rule.weights.iter().sum();
            assert_relative_eq!(density_constant(k) * mass, 1.0, max_relative = 1e-12);
        }
    }
}
