//! Equilibrium measure of the constrained log-gas in every one-band
//! scenario: band end-points, densities, resolvents and first moments.
//!
//! The asymmetric formulas are written for `λ < μ`; supports built from a
//! geometry with `λ > μ` use the canonical orientation, so `a`, `b` and the
//! wall `γ = min(λ, μ)` are the same either way.

mod closure;
mod density;
pub mod integrals;
mod moments;
mod parametric;
mod potential;
mod resolvent;

pub use closure::MeasureClosure;
pub use density::{density, Density};
pub use moments::{endpoint_residuals, first_moment, EndpointResiduals};
pub use parametric::{parametric_state, Nu, ParametricState};
pub use potential::{potential, potential_derivative, potential_minimum, potential_with_walls};
pub use resolvent::{resolvent, resolvent_quadrature, Resolvent, Side};

use serde::{Deserialize, Serialize};

use crate::asymptotics::{classify, t_offset_of_x, CriticalPoint, Regime, ScaledGeometry, Scenario};
use crate::error::{Error, Result};

/// End-points are snapped onto the walls when they overshoot by less than
/// this much, which only happens through rounding next to a critical value.
const WALL_SNAP: f64 = 1e-9;

/// One band `[a, b]` inside `[0, γ]`, flanked by gaps whose nature is fixed
/// by the scenario.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BandSupport {
    pub a: f64,
    pub b: f64,
    pub scenario: Scenario,
    pub regime: Regime,
    pub geometry: ScaledGeometry,
    pub x: f64,
    /// Parameter `t` of the regime-II parametrization (asymmetric only).
    pub t: Option<f64>,
    /// Set when `x` lies on a scenario boundary.
    pub on_boundary: Option<CriticalPoint>,
    /// The band has collapsed to a point (`x → 0` limit).
    pub zero_width: bool,
}

impl BandSupport {
    pub fn gamma(&self) -> f64 {
        self.geometry.gamma()
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    /// Total length of saturated intervals.
    pub fn saturated_length(&self) -> f64 {
        let left = if self.scenario.left_saturated() { self.a } else { 0.0 };
        let right = if self.scenario.right_saturated() { self.gamma() - self.b } else { 0.0 };
        left + right
    }

    /// `[lo, hi]` outside of which the resolvent is analytic.
    pub fn analytic_hull(&self) -> (f64, f64) {
        let lo = if self.scenario.left_saturated() { 0.0 } else { self.a };
        let hi = if self.scenario.right_saturated() { self.gamma() } else { self.b };
        (lo, hi)
    }

    /// Sign `ν` of the unified regime-II end-point system: `+1` for VBV and
    /// `-1` for VBS.
    pub fn nu(&self) -> Option<Nu> {
        match (self.geometry.is_symmetric(), self.scenario) {
            (false, Scenario::Vbv) => Some(Nu::Plus),
            (false, Scenario::Vbs) => Some(Nu::Minus),
            _ => None,
        }
    }
}

/// Band end-points for the scenario selected by [`classify`].
pub fn endpoints(geom: &ScaledGeometry, x: f64) -> Result<BandSupport> {
    geom.require_interior()?;
    let report = classify(geom, x)?;
    let (l, m) = geom.canonical();
    let gamma = l;
    let mut t = None;
    let (a, b) = if geom.is_symmetric() {
        let r = x.sqrt();
        match report.scenario {
            Scenario::Sbv => ((r + 1.0 - 2.0 * l) / (r - 1.0), (r - 1.0 + 2.0 * l) / (r + 1.0)),
            Scenario::Vbv => {
                let s = (2.0 * l - 1.0).sqrt();
                let q = x.powf(0.25);
                ((s - q).powi(2) / (2.0 * (1.0 + r)), (s + q).powi(2) / (2.0 * (1.0 + r)))
            }
            Scenario::Vbs => ((1.0 - r) * (l - 1.0) / (1.0 + r), (1.0 + r) * (l - 1.0) / (1.0 - r)),
            Scenario::Sbs => return Err(Error::Internal("SBS in a symmetric geometry".into())),
        }
    } else {
        match report.scenario {
            Scenario::Sbv | Scenario::Sbs => {
                let root = 2.0 * (x * (m - 1.0) * (l - 1.0)).sqrt();
                let base = x + 1.0 - m - l;
                ((base - root) / (x - 1.0), (base + root) / (x - 1.0))
            }
            Scenario::Vbv | Scenario::Vbs => {
                let d = t_offset_of_x(geom, x)?;
                let t0 = m - l;
                let tt = t0 + d;
                t = Some(tt);
                let den = 2.0 * tt * tt * (l + m + tt);
                let a_plus = ((2.0 * l - 2.0) * t0 + (2.0 * l - 1.0) * d) * (2.0 * m * t0 + (2.0 * m - 1.0) * d) / den;
                let a_minus = (tt + 1.0) * (tt + t0) * d / den;
                let (sp, sm) = (a_plus.sqrt(), a_minus.sqrt());
                ((sp - sm).powi(2), (sp + sm).powi(2))
            }
        }
    };
    let a = snap(a, 0.0)?;
    let b = snap(b, gamma)?;
    if !(a >= 0.0 && b <= gamma && a <= b) {
        return Err(Error::Consistency(format!(
            "end-points a = {a}, b = {b} violate 0 <= a <= b <= {gamma} for {} at x = {x}",
            report.scenario
        )));
    }
    Ok(BandSupport {
        a,
        b,
        scenario: report.scenario,
        regime: report.regime,
        geometry: *geom,
        x,
        t,
        on_boundary: report.on_boundary,
        zero_width: !(b > a),
    })
}

fn snap(v: f64, wall: f64) -> Result<f64> {
    if !v.is_finite() {
        return Err(Error::Consistency(format!("non-finite end-point {v}")));
    }
    Ok(if (v - wall).abs() <= WALL_SNAP * wall.max(1.0) && ((wall == 0.0 && v < 0.0) || (wall > 0.0 && v > wall)) {
        wall
    } else {
        v
    })
}
