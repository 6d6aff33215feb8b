//! Quadrature rules and composite integrators.
//!
//! Gauss-Legendre and Gauss-Jacobi nodes come from the Golub-Welsch
//! eigenvalue method on the Jacobi recurrence matrix. Composite integration
//! refines by doubling the panel count until two successive estimates agree
//! to the requested tolerance, so a fixed [`QuadratureSpec`] always produces
//! the same panel order and therefore bitwise-identical sums.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use nalgebra::DMatrix;

use crate::error::{DunklError, Result};
use crate::special::{beta_fn, gamma_fn};

/// Settings shared by every composite integral in the crate.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct QuadratureSpec {
    /// Relative tolerance for panel-doubling convergence.
    pub rel_tol: f64,
    /// Gauss nodes per panel.
    pub nodes_per_panel: usize,
    /// Maximum number of panel-doubling rounds per segment.
    pub max_refinements: u32,
    /// Allowed truncation-tail mass relative to the running integral.
    pub tail_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-11,
            nodes_per_panel: 24,
            max_refinements: 10,
            tail_tol: 1e-13,
        }
    }
}

impl QuadratureSpec {
    /// A cheaper profile for nested inner integrals.
    pub fn relaxed(&self, factor: f64) -> Self {
        QuadratureSpec {
            rel_tol: self.rel_tol * factor,
            ..*self
        }
    }
}

/// Nodes and weights of a Gauss rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// Golub-Welsch construction for the Jacobi weight (1-x)^alpha (1+x)^beta.
    /// `alpha = beta = 0` yields Gauss-Legendre.
    pub fn jacobi(n: usize, alpha: f64, beta: f64) -> Result<GaussRule> {
        if n < 1 || n > 4096 {
            return Err(DunklError::out_of_range(format!(
                "quadrature degree {n} outside 1..=4096"
            )));
        }
        if !(alpha > -1.0) || !(beta > -1.0) {
            return Err(DunklError::out_of_range(format!(
                "Jacobi exponents must exceed -1, got ({alpha}, {beta})"
            )));
        }
        let mut m = DMatrix::<f64>::zeros(n, n);
        let ab = alpha + beta;
        for i in 0..n {
            let diag = if i == 0 {
                if ab + 2.0 == 0.0 {
                    0.0
                } else {
                    (beta - alpha) / (ab + 2.0)
                }
            } else {
                let t = 2.0 * i as f64 + ab;
                (beta * beta - alpha * alpha) / (t * (t + 2.0))
            };
            m[(i, i)] = diag;
            if i + 1 < n {
                let k = (i + 1) as f64;
                let t = 2.0 * k + ab;
                let num = 4.0 * k * (k + alpha) * (k + beta) * (k + ab);
                let den = t * t * (t + 1.0) * (t - 1.0);
                let off = (num / den).sqrt();
                m[(i, i + 1)] = off;
                m[(i + 1, i)] = off;
            }
        }
        let eigen = m.symmetric_eigen();
        let mu0 = 2f64.powf(ab + 1.0) * beta_fn(alpha + 1.0, beta + 1.0);
        let mut pairs: Vec<(f64, f64)> = eigen
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(j, &x)| {
                let v0 = eigen.eigenvectors[(0, j)];
                (x, mu0 * v0 * v0)
            })
            .collect();
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite nodes"));
        Ok(GaussRule {
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
        })
    }

    pub fn legendre(n: usize) -> Result<GaussRule> {
        GaussRule::jacobi(n, 0.0, 0.0)
    }

    /// Plain quadrature of `f` over [a, b] with the rule's implicit weight
    /// mapped onto the interval (only meaningful for the Legendre rule).
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        half * acc
    }
}

type RuleKey = (usize, u64, u64);

static RULE_CACHE: LazyLock<RwLock<HashMap<RuleKey, Arc<GaussRule>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Cached rule lookup; rules are immutable once built.
pub fn cached_jacobi(n: usize, alpha: f64, beta: f64) -> Result<Arc<GaussRule>> {
    let key = (n, alpha.to_bits(), beta.to_bits());
    if let Some(rule) = RULE_CACHE.read().expect("rule cache").get(&key) {
        return Ok(rule.clone());
    }
    let rule = Arc::new(GaussRule::jacobi(n, alpha, beta)?);
    RULE_CACHE
        .write()
        .expect("rule cache")
        .insert(key, rule.clone());
    Ok(rule)
}

pub fn cached_legendre(n: usize) -> Result<Arc<GaussRule>> {
    cached_jacobi(n, 0.0, 0.0)
}

/// Composite Gauss-Legendre over [a, b] split at `breakpoints`, refining each
/// segment by panel doubling until successive estimates agree to
/// `spec.rel_tol` relative to max(|estimate|, `scale_hint`).
pub fn integrate_segmented<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    spec: &QuadratureSpec,
    scale_hint: f64,
) -> Result<f64> {
    if !(b > a) {
        return Ok(0.0);
    }
    let rule = cached_legendre(spec.nodes_per_panel)?;
    let mut edges: Vec<f64> = vec![a, b];
    edges.extend(breakpoints.iter().copied().filter(|&x| x > a && x < b));
    edges.sort_by(|p, q| p.partial_cmp(q).expect("finite breakpoints"));
    edges.dedup();

    let mut total = 0.0;
    for seg in edges.windows(2) {
        total += refine_segment(&f, seg[0], seg[1], &rule, spec, scale_hint)?;
    }
    Ok(total)
}

fn refine_segment<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    rule: &GaussRule,
    spec: &QuadratureSpec,
    scale_hint: f64,
) -> Result<f64> {
    let mut panels = 1usize;
    let mut prev = panel_sum(f, a, b, panels, rule);
    for _ in 0..spec.max_refinements {
        panels *= 2;
        let cur = panel_sum(f, a, b, panels, rule);
        let delta = (cur - prev).abs();
        let scale = cur.abs().max(scale_hint).max(f64::MIN_POSITIVE);
        if delta <= spec.rel_tol * scale {
            return Ok(cur);
        }
        prev = cur;
    }
    // One more estimate for the error report.
    let cur = panel_sum(f, a, b, panels * 2, rule);
    let delta = (cur - prev).abs();
    let scale = cur.abs().max(scale_hint).max(f64::MIN_POSITIVE);
    if delta <= spec.rel_tol * scale {
        Ok(cur)
    } else {
        Err(DunklError::QuadratureNotConverged {
            delta: delta / scale,
            tolerance: spec.rel_tol,
        })
    }
}

fn panel_sum<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize, rule: &GaussRule) -> f64 {
    let h = (b - a) / panels as f64;
    let mut acc = 0.0;
    for i in 0..panels {
        let lo = a + i as f64 * h;
        acc += rule.integrate(lo, lo + h, f);
    }
    acc
}

/// ∫_0^h r^beta f(r) dr with the power absorbed into a Gauss-Jacobi rule,
/// so a non-integer exponent at the origin costs no accuracy.
///
/// Structure much narrower than the panel (say a Gaussian of width 1e-10
/// inside [0, 1]) is handled by geometric zooming rather than by growing the
/// rule: node counts stay small while the subdivision shrinks scale-free
/// towards the origin.
pub fn integrate_left_power<F: Fn(f64) -> f64>(
    f: F,
    h: f64,
    beta: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    left_power_zoom(&f, h, beta, spec, 0)
}

fn left_power_zoom<F: Fn(f64) -> f64>(
    f: &F,
    h: f64,
    beta: f64,
    spec: &QuadratureSpec,
    depth: u32,
) -> Result<f64> {
    if h <= 0.0 {
        return Ok(0.0);
    }
    let mut n = spec.nodes_per_panel;
    let mut prev = left_power_once(f, h, beta, n)?;
    for _ in 0..4 {
        n *= 2;
        let cur = left_power_once(f, h, beta, n)?;
        if (cur - prev).abs() <= spec.rel_tol * cur.abs().max(f64::MIN_POSITIVE) {
            return Ok(cur);
        }
        prev = cur;
    }
    if depth >= 48 {
        // interval is already below every representable structure scale
        return Ok(prev);
    }
    let split = h / 16.0;
    let inner = left_power_zoom(f, split, beta, spec, depth + 1)?;
    let outer = integrate_segmented(
        |r| f(r) * r.powf(beta),
        split,
        h,
        &[],
        spec,
        inner.abs(),
    )?;
    Ok(inner + outer)
}

fn left_power_once<F: Fn(f64) -> f64>(f: &F, h: f64, beta: f64, n: usize) -> Result<f64> {
    let rule = cached_jacobi(n, 0.0, beta)?;
    let half = 0.5 * h;
    let mut acc = 0.0;
    for (t, w) in rule.nodes.iter().zip(&rule.weights) {
        acc += w * f(half * (1.0 + t));
    }
    Ok(half.powf(beta + 1.0) * acc)
}

/// ∫_a^b (b-r)^alpha f(r) dr with the right-endpoint power absorbed.
pub fn integrate_right_power<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    alpha: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    right_power_zoom(&f, a, b, alpha, spec, 0)
}

fn right_power_zoom<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    alpha: f64,
    spec: &QuadratureSpec,
    depth: u32,
) -> Result<f64> {
    if !(b > a) {
        return Ok(0.0);
    }
    let mut n = spec.nodes_per_panel;
    let mut prev = right_power_once(f, a, b, alpha, n)?;
    for _ in 0..4 {
        n *= 2;
        let cur = right_power_once(f, a, b, alpha, n)?;
        if (cur - prev).abs() <= spec.rel_tol * cur.abs().max(f64::MIN_POSITIVE) {
            return Ok(cur);
        }
        prev = cur;
    }
    if depth >= 48 {
        return Ok(prev);
    }
    let split = b - (b - a) / 16.0;
    let inner = right_power_zoom(f, split, b, alpha, spec, depth + 1)?;
    let outer = integrate_segmented(
        |r| f(r) * (b - r).powf(alpha),
        a,
        split,
        &[],
        spec,
        inner.abs(),
    )?;
    Ok(inner + outer)
}

fn right_power_once<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    alpha: f64,
    n: usize,
) -> Result<f64> {
    let rule = cached_jacobi(n, alpha, 0.0)?;
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (t, w) in rule.nodes.iter().zip(&rule.weights) {
        acc += w * f(a + half * (1.0 + t));
    }
    Ok(half.powf(alpha + 1.0) * acc)
}

/// End of the origin panel for a radial integral: stops short of the first
/// breakpoint so endpoint-power panels never contain interior structure.
pub fn head_panel_end(breakpoints: &[f64], cap: f64) -> f64 {
    let first_break = breakpoints
        .iter()
        .copied()
        .filter(|&b| b > 0.0)
        .fold(f64::INFINITY, f64::min);
    (0.5 * first_break).min(1.0).min(cap)
}

/// Iterated-averaging acceleration for an alternating sequence of partial
/// contributions (used to sum between-zeros pieces of oscillatory tails).
/// Returns the accelerated sum of `terms` and an error estimate.
pub fn sum_alternating_accelerated(terms: &[f64]) -> (f64, f64) {
    if terms.is_empty() {
        return (0.0, 0.0);
    }
    let mut row: Vec<f64> = Vec::with_capacity(terms.len());
    let mut acc = 0.0;
    for &t in terms {
        acc += t;
        row.push(acc);
    }
    let mut last = *row.last().expect("nonempty");
    let mut prev_est = last;
    while row.len() > 1 {
        for i in 0..row.len() - 1 {
            row[i] = 0.5 * (row[i] + row[i + 1]);
        }
        row.pop();
        prev_est = last;
        last = row[0];
    }
    (last, (last - prev_est).abs())
}

/// Normalisation constant of the Jacobi weight: ∫_{-1}^1 (1-x)^a (1+x)^b dx.
pub fn jacobi_weight_mass(a: f64, b: f64) -> f64 {
    2f64.powf(a + b + 1.0) * gamma_fn(a + 1.0) * gamma_fn(b + 1.0) / gamma_fn(a + b + 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn legendre_five_matches_reference() {
        let rule = GaussRule::legendre(5).unwrap();
        let x_ref = [
            -0.906_179_845_938_664,
            -0.538_469_310_105_683_1,
            0.0,
            0.538_469_310_105_683_1,
            0.906_179_845_938_664,
        ];
        let w_ref = [
            0.236_926_885_056_189_08,
            0.478_628_670_499_366_47,
            0.568_888_888_888_888_9,
            0.478_628_670_499_366_47,
            0.236_926_885_056_189_08,
        ];
        for i in 0..5 {
            assert_relative_eq!(rule.nodes[i], x_ref[i], epsilon = 1e-13);
            assert_relative_eq!(rule.weights[i], w_ref[i], epsilon = 1e-13);
        }
    }

    #[test]
    fn jacobi_rule_integrates_its_weight() {
        for &(a, b) in &[(-0.5, 0.5), (0.3, 1.7), (-0.9, 0.0)] {
            let rule = GaussRule::jacobi(12, a, b).unwrap();
            let total: f64 = rule.weights.iter().sum();
            assert_relative_eq!(total, jacobi_weight_mass(a, b), max_relative = 1e-12);
        }
    }

    #[test]
    fn jacobi_rejects_bad_exponents() {
        assert!(GaussRule::jacobi(8, -1.0, 0.0).is_err());
        assert!(GaussRule::jacobi(0, 0.0, 0.0).is_err());
    }

    #[test]
    fn segmented_integration_of_smooth_function() {
        let spec = QuadratureSpec::default();
        let v = integrate_segmented(|x: f64| x.sin(), 0.0, PI, &[], &spec, 0.0).unwrap();
        assert_relative_eq!(v, 2.0, max_relative = 1e-13);
    }

    #[test]
    fn segmented_integration_honours_breakpoints() {
        // |x - 1| has a kink; a breakpoint at 1 keeps panels one-sided.
        let spec = QuadratureSpec::default();
        let v = integrate_segmented(|x: f64| (x - 1.0).abs(), 0.0, 2.0, &[1.0], &spec, 0.0).unwrap();
        assert_relative_eq!(v, 1.0, max_relative = 1e-13);
    }

    #[test]
    fn left_power_panel_handles_fractional_exponent() {
        // ∫_0^1 r^{-0.4} cos(r) dr via series reference from direct fine quadrature
        let spec = QuadratureSpec::default();
        let direct = integrate_left_power(|r: f64| r.cos(), 1.0, -0.4, &spec).unwrap();
        // reference: sum of ∫ r^{-0.4+2m} (-1)^m/(2m)! over the cosine series
        let mut reference = 0.0;
        let mut sign = 1.0;
        let mut fact = 1.0;
        for m in 0..20 {
            let p = 2.0 * m as f64;
            if m > 0 {
                fact *= p * (p - 1.0);
                sign = -sign;
            }
            reference += sign / fact / (p + 0.6);
        }
        assert_relative_eq!(direct, reference, max_relative = 1e-12);
    }

    #[test]
    fn alternating_acceleration_beats_direct_sum() {
        // sum (-1)^n / (n+1) = ln 2, using only 18 terms
        let terms: Vec<f64> = (0..18)
            .map(|n| if n % 2 == 0 { 1.0 } else { -1.0 } / (n as f64 + 1.0))
            .collect();
        let (accel, _err) = sum_alternating_accelerated(&terms);
        let direct_err = (terms.iter().sum::<f64>() - 2f64.ln()).abs();
        let accel_err = (accel - 2f64.ln()).abs();
        assert!(accel_err < 1e-5, "accelerated error {accel_err:e}");
        assert!(accel_err < 1e-3 * direct_err);
    }
}
