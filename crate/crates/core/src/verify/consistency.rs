//! Pointwise consistency checks of the equilibrium measure and its moments.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::asymptotics::{critical_values, phi, ScaledGeometry, Scenario};
use crate::equilibrium::{endpoint_residuals, resolvent_quadrature, MeasureClosure};
use crate::error::Result;

const QUADRATURE_TOLERANCE: f64 = 1e-12;
/// Density samples used for the range check.
const RANGE_SAMPLES: usize = 2001;
/// `|z|` for the large-`z` expansion check.
pub const LARGE_Z: f64 = 1e6;

/// Residuals of one `(λ, μ, x)` configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumCheck {
    pub x: f64,
    pub scenario: Scenario,
    /// `|∫ρ - 1|`.
    pub mass_residual: f64,
    pub density_min: f64,
    pub density_max: f64,
    pub endpoint_residual: f64,
    /// `max |z W(z) - 1 - E/z| · |z|` over several directions at `|z| = 10⁶`.
    pub large_z_residual: f64,
    /// Largest `|W_quadrature - W|` over the off-support probe points.
    pub quadrature_residual: f64,
}

pub fn equilibrium_check(geom: &ScaledGeometry, x: f64) -> Result<EquilibriumCheck> {
    let c = MeasureClosure::new(geom, x)?;
    let s = &c.support;
    let gamma = s.gamma();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..RANGE_SAMPLES {
        let z = gamma * i as f64 / (RANGE_SAMPLES - 1) as f64;
        let r = c.density.eval(z)?;
        lo = lo.min(r);
        hi = hi.max(r);
    }
    let large_z_residual = [0.0, 0.9, 1.7, 3.1, -2.3]
        .iter()
        .map(|&angle| {
            let z = Complex64::from_polar(LARGE_Z, angle);
            c.resolvent.eval(z).map(|w| (z * w - 1.0 - c.first_moment / z).norm() * LARGE_Z)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let probes = [Complex64::new(gamma + 1.0, 0.0), Complex64::new(0.5 * (s.a + s.b), 1.0)];
    let quadrature_residual = if s.zero_width {
        0.0
    } else {
        probes
            .iter()
            .map(|&z| Ok((resolvent_quadrature(s, z)? - c.resolvent.eval(z)?).norm()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max)
    };
    Ok(EquilibriumCheck {
        x,
        scenario: s.scenario,
        mass_residual: (c.density.mass(QUADRATURE_TOLERANCE)? - 1.0).abs(),
        density_min: lo,
        density_max: hi,
        endpoint_residual: endpoint_residuals(s).max_abs(),
        large_z_residual,
        quadrature_residual,
    })
}

/// The first moment against `x∂ₓΦ` and against `∫ z ρ(z) dz`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentCheck {
    pub x: f64,
    pub scenario: Scenario,
    pub first_moment: f64,
    /// Richardson-extrapolated `dΦ/d log x`.
    pub phi_derivative: f64,
    pub density_moment: f64,
    pub derivative_residual: f64,
    pub density_residual: f64,
}

/// Central difference `[Φ(x e^h) - Φ(x e^{-h})] / 2h` with one Richardson
/// step, the step capped so that the stencil stays inside one scenario.
pub fn phi_log_derivative(geom: &ScaledGeometry, x: f64, h: f64) -> Result<f64> {
    let s = x.ln();
    let gap = critical_values(geom)?
        .scenario_boundaries()
        .iter()
        .map(|(_, xc)| (xc.ln() - s).abs())
        .fold(f64::INFINITY, f64::min);
    let h = h.min(0.25 * gap);
    let d = |h: f64| -> Result<f64> { Ok((phi(geom, (s + h).exp())? - phi(geom, (s - h).exp())?) / (2.0 * h)) };
    Ok((4.0 * d(0.5 * h)? - d(h)?) / 3.0)
}

pub fn moment_check(geom: &ScaledGeometry, x: f64) -> Result<MomentCheck> {
    let c = MeasureClosure::new(geom, x)?;
    let phi_derivative = phi_log_derivative(geom, x, 1e-3)?;
    let density_moment = c.density.moment(1, QUADRATURE_TOLERANCE)?;
    Ok(MomentCheck {
        x,
        scenario: c.support.scenario,
        first_moment: c.first_moment,
        phi_derivative,
        density_moment,
        derivative_residual: (c.first_moment - phi_derivative).abs(),
        density_residual: (c.first_moment - density_moment).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representative_points() {
        for (l, m, x) in [(2.0, 2.0, 3.0), (2.0, 2.0, 0.05), (2.0, 3.0, 16.0), (1.2, 3.0, 8.0), (2.0, 3.0, 0.5)] {
            let g = ScaledGeometry::new(l, m).unwrap();
            let e = equilibrium_check(&g, x).unwrap();
            assert!(e.mass_residual < 1e-7 && e.endpoint_residual < 1e-10, "{e:?}");
            assert!(e.large_z_residual < 1e-4 && e.quadrature_residual < 1e-6, "{e:?}");
            let m = moment_check(&g, x).unwrap();
            assert!(m.derivative_residual < 1e-6 && m.density_residual < 1e-7, "{m:?}");
        }
    }
}
