//! First moments and end-point equation residuals.

use serde::{Deserialize, Serialize};

use super::BandSupport;
use crate::asymptotics::Scenario;
use crate::error::{Error, Result};

/// Mean particle position `E = ∫ z ρ(z) dz`, from the scenario's closed form.
pub fn first_moment(support: &BandSupport) -> Result<f64> {
    let (l, m) = support.geometry.canonical();
    let x = support.x;
    if support.geometry.is_symmetric() {
        let k = (l - 1.0).powi(2);
        return Ok(match support.scenario {
            Scenario::Vbv => (2.0 * l - 1.0) / (2.0 * (1.0 + x.sqrt())) + 0.25,
            Scenario::Sbv => 0.5 + k / (x - 1.0),
            Scenario::Vbs => 0.5 * l * l - 0.5 * k * (1.0 + x) / (1.0 - x),
            Scenario::Sbs => return Err(Error::Internal("SBS in a symmetric geometry".into())),
        });
    }
    match support.scenario {
        Scenario::Sbv | Scenario::Sbs => Ok((l - 1.0) * (m - 1.0) / (x - 1.0) + 0.5),
        Scenario::Vbv | Scenario::Vbs => {
            let t = support
                .t
                .ok_or_else(|| Error::Internal("regime-II support without parameter t".into()))?;
            let t0 = m - l;
            let num = t.powi(3) + (8.0 * l * m - 3.0 * l - 3.0 * m + 2.0) * t * t - 3.0 * t0 * t0 * t
                + t0 * t0 * (l + m - 2.0);
            Ok(num / (4.0 * t * t * (l + m + t)))
        }
    }
}

/// Left-minus-right residuals of the two end-point equations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EndpointResiduals {
    pub ratio: f64,
    pub sum: f64,
}

impl EndpointResiduals {
    pub fn max_abs(&self) -> f64 {
        self.ratio.abs().max(self.sum.abs())
    }
}

/// Evaluates the scenario's end-point equations at the support's `(a, b)`.
///
/// The first equation is the ratio condition fixing `x`, the second the sum
/// rule from the `1/z` coefficient. The asymmetric VBV/VBS pair is the
/// unified `ν`-form.
pub fn endpoint_residuals(support: &BandSupport) -> EndpointResiduals {
    let (l, m) = support.geometry.canonical();
    let (a, b, x) = (support.a, support.b, support.x);
    let sq = |v: f64| v.max(0.0).sqrt();
    let (sa, sb) = (sq(a), sq(b));
    let (la, lb) = (sq(l - a), sq(l - b));
    let (ma, mb) = (sq(m - a), sq(m - b));
    let q = x.powf(0.25);
    let r = x.sqrt();
    let (ratio, sum) = if support.geometry.is_symmetric() {
        match support.scenario {
            Scenario::Vbv => ((la + lb) / (sa + sb) - q, l - sa * sb - la * lb - 1.0),
            Scenario::Sbv => ((la + lb) / sq(b - a) - q, l - la * lb - 1.0),
            Scenario::Vbs => (sq(b - a) / (sa + sb) - q, l - sa * sb - 1.0),
            Scenario::Sbs => (f64::NAN, f64::NAN),
        }
    } else {
        match support.scenario {
            Scenario::Sbv => ((ma + mb) / (la - lb) - r, m + l - ma * mb - la * lb - 2.0),
            Scenario::Sbs => ((ma + mb) / (la + lb) - r, m + l - ma * mb + la * lb - 2.0),
            Scenario::Vbv | Scenario::Vbs => {
                let nu = if support.scenario == Scenario::Vbv { 1.0 } else { -1.0 };
                (
                    (sb - sa) / (sb + sa) * (ma + mb) / (la - nu * lb) - r,
                    l + m - nu * la * lb - ma * mb - 2.0 - 2.0 * sa * sb,
                )
            }
        }
    };
    EndpointResiduals { ratio, sum }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::ScaledGeometry;
    use crate::equilibrium::endpoints;

    fn sup(l: f64, m: f64, x: f64) -> BandSupport {
        endpoints(&ScaledGeometry::new(l, m).unwrap(), x).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        for l in [1.5, 2.0, 4.0] {
            assert!((first_moment(&sup(l, l, 1.0)).unwrap() - l / 2.0).abs() < 1e-14);
        }
        assert!((first_moment(&sup(2.0, 3.0, 16.0)).unwrap() - 19.0 / 30.0).abs() < 1e-14);
    }

    #[test]
    fn residual_examples() {
        assert!(endpoint_residuals(&sup(2.0, 2.0, 3.0)).max_abs() <= 1e-12);
        assert!(endpoint_residuals(&sup(2.0, 3.0, 0.5)).max_abs() <= 1e-10);
        assert!(endpoint_residuals(&sup(2.0, 3.0, 16.0)).max_abs() <= 1e-12);
        for (l, m, x) in [(2.0, 2.0, 20.0), (2.0, 2.0, 0.05), (1.2, 3.0, 8.0), (2.0, 3.0, 1.5), (1.2, 3.0, 2.0)] {
            let r = endpoint_residuals(&sup(l, m, x));
            assert!(r.max_abs() <= 1e-10, "{l} {m} {x}: {r:?}");
        }
    }

    #[test]
    fn ab_form_of_regime_ii_moment() {
        // E in terms of a, b and the scenario sign.
        for (l, m, x) in [(2.0, 3.0, 0.5), (2.0, 3.0, 3.0), (2.0, 3.0, 10.0), (1.2, 3.0, 2.0)] {
            let s = sup(l, m, x);
            let nu = if s.scenario == Scenario::Vbv { 1.0 } else { -1.0 };
            let (a, b) = (s.a, s.b);
            let e = (-2.0 * (a + b) * (a * b).sqrt() + 2.0 * (l * l + m * m)
                - (a + b + 2.0 * m) * (m - a).sqrt() * (m - b).sqrt()
                - nu * (a + b + 2.0 * l) * (l - a).sqrt() * (l - b).sqrt())
                / 8.0;
            assert!((e - first_moment(&s).unwrap()).abs() < 1e-12, "{l} {m} {x}");
        }
    }
}
