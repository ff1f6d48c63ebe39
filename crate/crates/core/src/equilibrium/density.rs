//! Equilibrium densities in arctangent form.

use std::f64::consts::PI;

use super::integrals::band_point;
use super::BandSupport;
use crate::asymptotics::Scenario;
use crate::error::{invalid, Result};
use crate::numeric::integrate;

/// On the band, `ρ(z) = offset + Σ wᵢ θ(cᵢ, z)/π` with
/// `θ(c, z) = arctan √(|c-a|(b-z) / (|c-b|(z-a)))`; outside the band the
/// density is 0 on voids and 1 on saturated gaps.
#[derive(Clone, Debug, PartialEq)]
pub struct Density {
    support: BandSupport,
    offset: f64,
    terms: Vec<(f64, f64)>,
}

/// Tolerance for evaluating at the walls `0` and `γ`.
const WALL_TOLERANCE: f64 = 1e-12;

pub fn density(support: &BandSupport) -> Density {
    let (l, m) = support.geometry.canonical();
    let mut terms = Vec::new();
    let mut offset = 0.0;
    if support.geometry.is_symmetric() {
        match support.scenario {
            Scenario::Vbv => terms.extend([(l, 2.0), (0.0, -2.0)]),
            Scenario::Sbv => terms.push((l, 2.0)),
            Scenario::Vbs => {
                offset = 1.0;
                terms.push((0.0, -2.0));
            }
            Scenario::Sbs => unreachable!("SBS never occurs in a symmetric geometry"),
        }
    } else {
        terms.push((m, 1.0));
        if support.scenario.right_saturated() {
            offset = 1.0;
            terms.push((l, -1.0));
        } else {
            terms.push((l, 1.0));
        }
        if !support.scenario.left_saturated() {
            terms.push((0.0, -2.0));
        }
    }
    Density { support: *support, offset, terms }
}

impl Density {
    pub fn support(&self) -> &BandSupport {
        &self.support
    }

    /// Value on the open band, by `θ = arccos((2z-a-b)/(b-a))` so that
    /// `(b-z)/(z-a) = tan²(θ/2)`.
    fn band_value(&self, z: f64) -> f64 {
        let (a, b) = (self.support.a, self.support.b);
        let sum: f64 = self
            .terms
            .iter()
            .map(|&(c, w)| {
                let y = ((c - a).abs() * (b - z)).max(0.0).sqrt();
                let x = ((c - b).abs() * (z - a)).max(0.0).sqrt();
                w * y.atan2(x)
            })
            .sum();
        self.offset + sum / PI
    }

    /// `ρ(z)` for `z ∈ [0, γ]`; band edges take their one-sided limits.
    pub fn eval(&self, z: f64) -> Result<f64> {
        let gamma = self.support.gamma();
        let tol = WALL_TOLERANCE * gamma.max(1.0);
        if !(z >= -tol && z <= gamma + tol) {
            return Err(invalid(format!("density evaluated at z = {z} outside [0, {gamma}]")));
        }
        let s = &self.support;
        Ok(if z < s.a || (s.zero_width && z <= s.a) {
            if s.scenario.left_saturated() { 1.0 } else { 0.0 }
        } else if z > s.b || s.zero_width {
            if s.scenario.right_saturated() { 1.0 } else { 0.0 }
        } else if z == s.a {
            self.edge_limit(true)
        } else if z == s.b {
            self.edge_limit(false)
        } else {
            self.band_value(z)
        })
    }

    fn edge_limit(&self, left: bool) -> f64 {
        let (a, b) = (self.support.a, self.support.b);
        let sum: f64 = self
            .terms
            .iter()
            .map(|&(c, w)| {
                // θ ≡ 0 when c = a and θ ≡ π/2 when c = b.
                let theta = if c == a {
                    0.0
                } else if c == b || left {
                    PI / 2.0
                } else {
                    0.0
                };
                w * theta
            })
            .sum();
        self.offset + sum / PI
    }

    /// `∫_a^b z^k ρ(z) dz` over the band only.
    pub fn band_moment(&self, k: i32, tol: f64) -> Result<f64> {
        let s = &self.support;
        if s.zero_width {
            return Ok(0.0);
        }
        let h = 0.5 * (s.b - s.a);
        Ok(integrate(
            |th: f64| {
                let z = band_point(s.a, s.b, th);
                z.powi(k) * self.band_value(z) * h * th.sin()
            },
            0.0,
            PI,
            tol,
        )?
        .value)
    }

    /// `∫_0^γ z^k ρ(z) dz`, band by quadrature and saturated gaps exactly.
    pub fn moment(&self, k: i32, tol: f64) -> Result<f64> {
        let s = &self.support;
        let kf = f64::from(k + 1);
        let mut total = self.band_moment(k, tol)?;
        if s.scenario.left_saturated() {
            total += s.a.powi(k + 1) / kf;
        }
        if s.scenario.right_saturated() {
            total += (s.gamma().powi(k + 1) - s.b.powi(k + 1)) / kf;
        }
        Ok(total)
    }

    /// `∫_0^γ ρ`, which should be 1.
    pub fn mass(&self, tol: f64) -> Result<f64> {
        self.moment(0, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::ScaledGeometry;
    use crate::equilibrium::endpoints;

    fn dens(l: f64, m: f64, x: f64) -> Density {
        density(&endpoints(&ScaledGeometry::new(l, m).unwrap(), x).unwrap())
    }

    #[test]
    fn mirror_symmetry_at_unit_x() {
        let d = dens(2.0, 2.0, 1.0);
        for u in [0.05, 0.2, 0.4, 0.55] {
            assert!((d.eval(1.0 + u).unwrap() - d.eval(1.0 - u).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn edge_values() {
        let d = dens(2.0, 2.0, 1.0);
        let s = *d.support();
        assert_eq!(d.eval(s.a).unwrap(), 0.0);
        assert!(d.eval(s.b).unwrap().abs() < 1e-15);
        assert!(d.eval(s.a + 1e-12).unwrap() < 1e-5);
        let d = dens(2.0, 2.0, 20.0);
        let s = *d.support();
        assert!((d.eval(s.a).unwrap() - 1.0).abs() < 1e-15);
        assert!((d.eval(s.a + 1e-12).unwrap() - 1.0).abs() < 1e-5);
        assert_eq!(d.eval(0.5 * s.a).unwrap(), 1.0);
        assert!(d.eval(2.1).is_err());
    }

    #[test]
    fn unit_mass_in_every_scenario() {
        for (l, m, x) in [(2.0, 2.0, 1.0), (2.0, 2.0, 20.0), (2.0, 2.0, 0.05), (2.0, 3.0, 16.0), (1.2, 3.0, 8.0), (2.0, 3.0, 1.5), (2.0, 3.0, 0.5)] {
            let d = dens(l, m, x);
            let mass = d.mass(1e-12).unwrap();
            assert!((mass - 1.0).abs() < 1e-9, "{l} {m} {x}: {mass}");
        }
    }
}
