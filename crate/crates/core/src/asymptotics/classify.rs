//! Critical values and the scenario/regime classifier.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{require_positive_x, ScaledGeometry};
use crate::error::Result;

/// Left-to-right sequence of saturated (S), band (B) and void (V) intervals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scenario {
    #[serde(rename = "SBV")]
    Sbv,
    #[serde(rename = "SBS")]
    Sbs,
    #[serde(rename = "VBV")]
    Vbv,
    #[serde(rename = "VBS")]
    Vbs,
}

impl Scenario {
    pub fn left_saturated(self) -> bool {
        matches!(self, Scenario::Sbv | Scenario::Sbs)
    }

    pub fn right_saturated(self) -> bool {
        matches!(self, Scenario::Sbs | Scenario::Vbs)
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scenario::Sbv => "SBV",
            Scenario::Sbs => "SBS",
            Scenario::Vbv => "VBV",
            Scenario::Vbs => "VBS",
        })
    }
}

/// Analytic phase of the free energy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    I,
    II,
    III,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::I => "I",
            Regime::II => "II",
            Regime::III => "III",
        })
    }
}

/// Names of the special values of `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CriticalPoint {
    #[serde(rename = "x_c")]
    Xc,
    #[serde(rename = "x_c_tilde")]
    XcTilde,
    #[serde(rename = "x1")]
    X1,
    #[serde(rename = "x2")]
    X2,
}

impl CriticalPoint {
    pub const ALL: [CriticalPoint; 4] =
        [CriticalPoint::Xc, CriticalPoint::XcTilde, CriticalPoint::X1, CriticalPoint::X2];

    pub fn name(self) -> &'static str {
        match self {
            CriticalPoint::Xc => "x_c",
            CriticalPoint::XcTilde => "x_c_tilde",
            CriticalPoint::X1 => "x1",
            CriticalPoint::X2 => "x2",
        }
    }
}

impl fmt::Display for CriticalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Critical values at fixed `(λ, μ)`. Symmetric geometries fill `x_c_tilde`;
/// asymmetric ones fill the `t`-parametrization fields and `x1`, `x2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalValues {
    pub x_c: f64,
    pub x_c_tilde: Option<f64>,
    pub x1: Option<f64>,
    pub x2: Option<f64>,
    pub t_c: Option<f64>,
    pub t0: Option<f64>,
    pub t2: Option<f64>,
    pub sbs_region: bool,
}

impl CriticalValues {
    pub fn get(&self, which: CriticalPoint) -> Option<f64> {
        match which {
            CriticalPoint::Xc => Some(self.x_c),
            CriticalPoint::XcTilde => self.x_c_tilde,
            CriticalPoint::X1 => self.x1,
            CriticalPoint::X2 => self.x2,
        }
    }

    /// Points where the scenario changes, in increasing order.
    pub fn scenario_boundaries(&self) -> Vec<(CriticalPoint, f64)> {
        let mut out = vec![(CriticalPoint::Xc, self.x_c)];
        if let Some(v) = self.x_c_tilde {
            out.push((CriticalPoint::XcTilde, v));
        }
        if self.sbs_region {
            out.extend(self.x1.map(|v| (CriticalPoint::X1, v)));
        } else {
            out.extend(self.x2.map(|v| (CriticalPoint::X2, v)));
        }
        out.sort_by(|a, b| a.1.total_cmp(&b.1));
        out
    }

    /// Points where the regime changes, in increasing order.
    pub fn regime_boundaries(&self) -> Vec<(CriticalPoint, f64)> {
        let mut out = vec![(CriticalPoint::Xc, self.x_c)];
        if let Some(v) = self.x_c_tilde {
            out.insert(0, (CriticalPoint::XcTilde, v));
        }
        out
    }
}

/// `t₂`, where `B₊ = B₋` (canonical `λ < μ`).
fn t2(l: f64, m: f64) -> f64 {
    let disc = l * (m - l) * ((l + 4.0) * m - (l - 2.0).powi(2));
    ((l + 1.0) * (m - l) + disc.sqrt()) / (2.0 * l - 1.0)
}

/// Closed form of `x(t₂)`.
fn x2_closed_form(l: f64, m: f64) -> f64 {
    let q = (l + 4.0) * m - (l - 2.0).powi(2);
    let s = (l * (m - l) * q).sqrt();
    let poly = -l.powi(4) + 2.0 * l.powi(3) * m - l * l * m * m - 10.0 * l.powi(3)
        + 10.0 * l * m * m
        + 12.0 * l * l
        - 6.0 * l * m
        + 2.0 * m * m
        - 4.0 * m
        - 4.0 * l
        + 2.0;
    (poly + q * s) / (2.0 * (2.0 * l - 1.0).powi(3) * (l + m - 1.0))
}

/// Whether `(λ, μ)` (canonical) admits the SBS scenario.
fn in_sbs_region(l: f64, m: f64) -> bool {
    l > 1.0 && l < 4.0 / 3.0 && m > (2.0 - l).powi(2) / (4.0 - 3.0 * l)
}

pub fn critical_values(geom: &ScaledGeometry) -> Result<CriticalValues> {
    geom.require_interior()?;
    let (l, m) = geom.canonical();
    if geom.is_symmetric() {
        let x_c = (2.0 * l - 1.0).powi(2);
        return Ok(CriticalValues {
            x_c,
            x_c_tilde: Some(1.0 / x_c),
            x1: None,
            x2: None,
            t_c: None,
            t0: None,
            t2: None,
            sbs_region: false,
        });
    }
    let x_c = ((l * m).sqrt() + ((l - 1.0) * (m - 1.0)).sqrt()).powi(2);
    let t_c = ((l * (m - 1.0)).sqrt() + ((l - 1.0) * m).sqrt()).powi(2);
    Ok(CriticalValues {
        x_c,
        x_c_tilde: None,
        x1: Some((m - 1.0) / (l - 1.0)),
        x2: Some(x2_closed_form(l, m)),
        t_c: Some(t_c),
        t0: Some(m - l),
        t2: Some(t2(l, m)),
        sbs_region: in_sbs_region(l, m),
    })
}

/// Scenario and regime at one point of the phase diagram.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: Scenario,
    pub regime: Regime,
    pub geometry: ScaledGeometry,
    pub x: f64,
    pub critical: CriticalValues,
    /// Set when `x` coincides with a scenario boundary within
    /// `1e-12·max(1,x)`; the point is then assigned to the larger-`x` side.
    pub on_boundary: Option<CriticalPoint>,
}

/// Relative tolerance for treating `x` as sitting on a critical value.
pub const BOUNDARY_TOLERANCE: f64 = 1e-12;

pub fn classify(geom: &ScaledGeometry, x: f64) -> Result<ScenarioReport> {
    require_positive_x(x)?;
    let critical = critical_values(geom)?;
    let tol = BOUNDARY_TOLERANCE * x.max(1.0);
    let on_boundary = critical
        .scenario_boundaries()
        .into_iter()
        .find(|(_, v)| (x - v).abs() <= tol)
        .map(|(p, _)| p);
    // Snapping to the boundary puts the point on its larger-x side.
    let at_least = |v: f64| x >= v - tol;

    let (scenario, regime) = if let Some(xt) = critical.x_c_tilde {
        if at_least(critical.x_c) {
            (Scenario::Sbv, Regime::I)
        } else if at_least(xt) {
            (Scenario::Vbv, Regime::II)
        } else {
            (Scenario::Vbs, Regime::III)
        }
    } else {
        let regime = if at_least(critical.x_c) { Regime::I } else { Regime::II };
        let x1 = critical.x1.expect("asymmetric x1");
        let x2 = critical.x2.expect("asymmetric x2");
        let scenario = if critical.sbs_region {
            if at_least(x1) {
                Scenario::Sbv
            } else if at_least(critical.x_c) {
                Scenario::Sbs
            } else {
                Scenario::Vbs
            }
        } else if at_least(critical.x_c) {
            Scenario::Sbv
        } else if at_least(x2) {
            Scenario::Vbv
        } else {
            Scenario::Vbs
        };
        (scenario, regime)
    };
    Ok(ScenarioReport { scenario, regime, geometry: *geom, x, critical, on_boundary })
}

/// `x(t₂)` evaluated through the parametrization, for cross-checking the
/// closed form.
#[cfg(test)]
fn x2_via_parametrization(geom: &ScaledGeometry) -> Result<f64> {
    let (l, m) = geom.canonical();
    super::x_of_t(geom, t2(l, m))
}
