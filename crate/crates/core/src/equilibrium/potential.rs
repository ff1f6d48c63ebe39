//! The confining potential `V(z)` on `[0, γ]`.

use super::super::asymptotics::{require_positive_x, ScaledGeometry};
use crate::error::{invalid, Result};

fn ell(u: f64) -> f64 {
    if u == 0.0 {
        0.0
    } else {
        u * u.ln()
    }
}

fn check(geom: &ScaledGeometry, x: f64, z: f64, closed: bool) -> Result<()> {
    require_positive_x(x)?;
    let gamma = geom.gamma();
    let inside = if closed { z >= 0.0 && z <= gamma } else { z > 0.0 && z < gamma };
    if !inside {
        return Err(invalid(format!("z = {z} outside the potential's domain (0, {gamma})")));
    }
    Ok(())
}

fn v(geom: &ScaledGeometry, x: f64, z: f64) -> f64 {
    let (l, m) = (geom.lambda(), geom.mu());
    2.0 * ell(z) + ell(l - z) - ell(l) + ell(m - z) - ell(m) + z * x.ln()
}

/// `V(z) = 2z log z + (λ-z)log(λ-z) - λ log λ + (μ-z)log(μ-z) - μ log μ + z log x`
/// on the open interval `(0, γ)`.
pub fn potential(geom: &ScaledGeometry, x: f64, z: f64) -> Result<f64> {
    check(geom, x, z, false)?;
    Ok(v(geom, x, z))
}

/// [`potential`] extended continuously to the walls `z = 0` and `z = γ`.
pub fn potential_with_walls(geom: &ScaledGeometry, x: f64, z: f64) -> Result<f64> {
    check(geom, x, z, true)?;
    Ok(v(geom, x, z))
}

/// `V'(z) = 2 log z - log(λ-z) - log(μ-z) + log x`.
pub fn potential_derivative(geom: &ScaledGeometry, x: f64, z: f64) -> Result<f64> {
    check(geom, x, z, false)?;
    let (l, m) = (geom.lambda(), geom.mu());
    Ok(2.0 * z.ln() - (l - z).ln() - (m - z).ln() + x.ln())
}

/// The unique stationary point of `V` in `(0, γ)`.
pub fn potential_minimum(geom: &ScaledGeometry, x: f64) -> Result<f64> {
    require_positive_x(x)?;
    let (l, m) = (geom.lambda(), geom.mu());
    if x == 1.0 {
        return Ok(l * m / (l + m));
    }
    let disc = ((l + m).powi(2) + 4.0 * l * m * (x - 1.0)).sqrt();
    // z₊ = [-(λ+μ) + √disc] / (2(x-1)), rationalized to avoid cancellation.
    Ok(2.0 * l * m / (l + m + disc))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stationary_point() {
        for (l, m, x) in [(2.0, 3.0, 0.3), (2.0, 3.0, 5.0), (1.2, 3.0, 1.0), (2.0, 2.0, 1.0)] {
            let g = ScaledGeometry::new(l, m).unwrap();
            let z = potential_minimum(&g, x).unwrap();
            assert!(z > 0.0 && z < g.gamma());
            assert!(potential_derivative(&g, x, z).unwrap().abs() < 1e-13);
            if x != 1.0 {
                let direct = (-(l + m) + ((l + m).powi(2) + 4.0 * l * m * (x - 1.0)).sqrt()) / (2.0 * (x - 1.0));
                assert!((z - direct).abs() < 1e-12);
            }
        }
        let g = ScaledGeometry::new(2.0, 2.0).unwrap();
        assert_eq!(potential_minimum(&g, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn derivative_matches_differences() {
        let g = ScaledGeometry::new(2.0, 3.0).unwrap();
        for z in [0.3, 1.0, 1.7] {
            let mut prev = f64::INFINITY;
            for h in [1e-2, 1e-3] {
                let fd = (potential(&g, 2.0, z + h).unwrap() - potential(&g, 2.0, z - h).unwrap()) / (2.0 * h);
                let err = (fd - potential_derivative(&g, 2.0, z).unwrap()).abs();
                assert!(err < prev / 50.0 || err < 1e-9);
                prev = err;
            }
        }
    }

    #[test]
    fn domain() {
        let g = ScaledGeometry::new(2.0, 3.0).unwrap();
        assert!(potential(&g, 1.0, 0.0).is_err());
        assert!(potential(&g, 1.0, 2.0).is_err());
        assert_eq!(potential_with_walls(&g, 1.0, 0.0).unwrap(), 0.0);
        assert!(potential_with_walls(&g, 1.0, 2.0).unwrap().is_finite());
    }
}
