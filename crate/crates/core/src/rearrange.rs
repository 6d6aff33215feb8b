//! Distribution functions and decreasing rearrangements for the weighted
//! measure, with a cell-based numeric engine and the two-weak-type majorant
//! used to transfer endpoint bounds into rearrangement estimates.
//!
//! For a radial profile with strictly decreasing |F| everything is closed
//! form through the ball-mass function m(r) = d_k r^{2 gamma + d}/(2 gamma + d):
//! the distribution function is D(s) = m(F^{-1}(s)) and the rearrangement is
//! f*(t) = F(m^{-1}(t)).

use serde::{Deserialize, Serialize};

use crate::catalog::RadialProfile;
use crate::error::{DunklError, Result};
use crate::measure::MultiplicitySetup;

/// nu_k-measure of the superlevel set {|f| > s} for monotone radial catalog
/// profiles. Unbounded superlevel sets report as +infinity.
pub fn distribution_function(
    setup: &MultiplicitySetup,
    profile: &RadialProfile,
    s: f64,
) -> Result<f64> {
    if s < 0.0 {
        return Err(DunklError::NegativeArgument { name: "s", value: s });
    }
    if s >= profile.sup() {
        return Ok(0.0);
    }
    if s == 0.0 {
        // positive profiles have full support
        return Ok(match profile {
            RadialProfile::BallIndicator { radius } => setup.ball_mass(*radius),
            _ => f64::INFINITY,
        });
    }
    let radius = profile.superlevel_radius(s).ok_or_else(|| {
        DunklError::out_of_range(
            "distribution function needs a monotone profile; use the cell engine".to_string(),
        )
    })?;
    Ok(setup.ball_mass(radius))
}

/// f*(t) = inf { s >= 0 : D_f(s) <= t } for monotone radial catalog
/// profiles: F evaluated at the radius whose ball carries mass t.
pub fn decreasing_rearrangement(
    setup: &MultiplicitySetup,
    profile: &RadialProfile,
    t: f64,
) -> Result<f64> {
    if t < 0.0 {
        return Err(DunklError::NegativeArgument { name: "t", value: t });
    }
    if profile.superlevel_radius(0.5 * profile.sup()).is_none() {
        return Err(DunklError::out_of_range(
            "rearrangement needs a monotone profile; use the cell engine".to_string(),
        ));
    }
    if t == 0.0 {
        return Ok(profile.sup());
    }
    Ok(profile.eval(setup.ball_radius(t)))
}

/// An annulus [r_lo, r_hi) carrying one function value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialCell {
    pub r_lo: f64,
    pub r_hi: f64,
    pub value: f64,
}

/// Step representation of f*: value `values[i]` on (t_edges[i], t_edges[i+1]].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RearrangementTable {
    pub t_edges: Vec<f64>,
    pub values: Vec<f64>,
    /// total nu_k-mass accounted for by the cells
    pub total_mass: f64,
}

impl RearrangementTable {
    pub fn eval(&self, t: f64) -> f64 {
        if t < 0.0 {
            return f64::NAN;
        }
        for (i, v) in self.values.iter().enumerate() {
            if t < self.t_edges[i + 1] {
                return *v;
            }
        }
        0.0
    }

    /// Lebesgue distribution function of the step itself:
    /// |{ t : f*(t) > s }|.
    pub fn distribution(&self, s: f64) -> f64 {
        let mut len = 0.0;
        for (i, v) in self.values.iter().enumerate() {
            if *v > s {
                len = self.t_edges[i + 1];
            }
        }
        len
    }

    /// ∫_0^∞ (f*)^p dt, exact on the step.
    pub fn lp_mass(&self, p: f64) -> f64 {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| v.abs().powf(p) * (self.t_edges[i + 1] - self.t_edges[i]))
            .sum()
    }

    /// ∫ over (lo, hi) of s^{c-1} f*(s) ds, exact per step.
    pub fn weighted_integral(&self, c: f64, lo: f64, hi: f64) -> f64 {
        debug_assert!(c > 0.0);
        let mut acc = 0.0;
        for (i, v) in self.values.iter().enumerate() {
            let a = self.t_edges[i].max(lo);
            let b = self.t_edges[i + 1].min(hi);
            if b > a {
                acc += v * (b.powf(c) - a.powf(c)) / c;
            }
        }
        acc
    }
}

/// Sort annular cells by |value| and accumulate their closed-form masses
/// into a step rearrangement.
pub fn rearrangement_numeric(
    setup: &MultiplicitySetup,
    cells: &[RadialCell],
) -> Result<RearrangementTable> {
    let mut sorted: Vec<&RadialCell> = cells.iter().collect();
    sorted.sort_by(|a, b| a.r_lo.partial_cmp(&b.r_lo).expect("finite radii"));
    for pair in sorted.windows(2) {
        if pair[0].r_hi > pair[1].r_lo + 1e-14 * pair[1].r_lo.abs().max(1.0) {
            return Err(DunklError::OverlappingCells {
                radius: pair[1].r_lo,
            });
        }
    }
    let mut weighted: Vec<(f64, f64)> = cells
        .iter()
        .map(|c| {
            (
                c.value.abs(),
                setup.ball_mass(c.r_hi) - setup.ball_mass(c.r_lo),
            )
        })
        .collect();
    weighted.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite values"));

    let mut t_edges = vec![0.0];
    let mut values = Vec::new();
    let mut acc = 0.0;
    for (v, mass) in weighted {
        if mass <= 0.0 {
            continue;
        }
        acc += mass;
        // merge equal-value neighbours
        if values.last().is_some_and(|&last: &f64| last == v) {
            *t_edges.last_mut().expect("nonempty") = acc;
        } else {
            values.push(v);
            t_edges.push(acc);
        }
    }
    Ok(RearrangementTable {
        t_edges,
        values,
        total_mass: acc,
    })
}

/// Sample a profile on a radial grid into annular cells (midpoint values).
pub fn cells_from_profile(
    profile: &RadialProfile,
    edges: &[f64],
) -> Vec<RadialCell> {
    edges
        .windows(2)
        .map(|w| RadialCell {
            r_lo: w[0],
            r_hi: w[1],
            value: profile.eval(0.5 * (w[0] + w[1])),
        })
        .collect()
}

/// The two-weak-type majorant of a rearrangement at time t:
///   t^{-1/q1} ∫_0^t f*(s) ds + t^{-1/q2} ∫_t^∞ s^{1/r - 1} f*(s) ds
/// with q1 = 1/(1 - alpha/D), q2 = 1/(1/r - alpha/D) and D = 2 gamma + d.
pub fn calderon_majorant(
    table: &RearrangementTable,
    t: f64,
    alpha: f64,
    r: f64,
    setup: &MultiplicitySetup,
) -> Result<f64> {
    let dd = setup.effective_dim();
    if !(alpha > 0.0 && alpha < dd) {
        return Err(DunklError::AlphaOutOfRange { alpha, limit: dd });
    }
    if !(r > 1.0 && r < dd / alpha) {
        return Err(DunklError::out_of_range(format!(
            "interpolation exponent r = {r} outside (1, {})",
            dd / alpha
        )));
    }
    if !(t > 0.0) {
        return Err(DunklError::NegativeArgument { name: "t", value: t });
    }
    let inv_q1 = 1.0 - alpha / dd;
    let inv_q2 = 1.0 / r - alpha / dd;
    let head = table.weighted_integral(1.0, 0.0, t);
    let tail = table.weighted_integral(1.0 / r, t, f64::INFINITY);
    Ok(t.powf(-inv_q1) * head + t.powf(-inv_q2) * tail)
}
