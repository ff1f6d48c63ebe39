//! Free-energy densities `Φ`, `f₂` and the model free energy `F`.

use super::parametric::{t_offset_of_x, x_of_t_offset};
use super::{classify, psi_equal_args, require_positive_x, Regime, ScaledGeometry};
use crate::error::{invalid, Result};
use crate::exact::WeightParams;

/// `log(x/(x-1))` for `x > 1`.
fn log_x_over_x_minus_one(x: f64) -> f64 {
    -(-1.0 / x).ln_1p()
}

/// Regime-I density `½ log x - (λ-1)(μ-1) log(x/(x-1))`, valid for `x > 1`.
pub fn phi_regime_i(geom: &ScaledGeometry, x: f64) -> Result<f64> {
    geom.require_interior()?;
    if !(x > 1.0 && x.is_finite()) {
        return Err(invalid(format!("regime-I formula needs x > 1, got {x}")));
    }
    let (l, m) = geom.canonical();
    Ok(0.5 * x.ln() - (l - 1.0) * (m - 1.0) * log_x_over_x_minus_one(x))
}

/// Regime-I density written in the `t`-parametrization, for `t > λ+μ-2`.
pub fn phi_regime_i_of_t(geom: &ScaledGeometry, t: f64) -> Result<f64> {
    geom.require_interior()?;
    let (l, m) = geom.canonical();
    if !(t > l + m - 2.0) {
        return Err(invalid(format!("regime-I parametrization needs t > {}", l + m - 2.0)));
    }
    let d = t - (m - l);
    let k = (l - 1.0) * (m - 1.0);
    let c = (2.0 * l * m - 2.0 * l - 2.0 * m + 1.0) / 2.0;
    Ok(2.0 * k * t.ln() - (2.0 * k - 1.0) * (t + 1.0).ln() - c * d.ln() - c * (t + m - l).ln()
        + k * (t + l + m).ln()
        + k * (t - l - m + 2.0).ln()
        - 0.5 * ((2.0 * l - 1.0) * t + l - m).ln()
        - 0.5 * ((2.0 * m - 1.0) * t + m - l).ln())
}

/// Regime-II density at `t = t₀ + δ`.
fn phi_ii_offset(geom: &ScaledGeometry, d: f64) -> f64 {
    let (l, m) = geom.canonical();
    let t0 = m - l;
    let t = t0 + d;
    let c = 0.5
        * ((l - 1.0).powi(2) * (2.0 * (l - 1.0)).ln()
            + (m - 1.0).powi(2) * (2.0 * (m - 1.0)).ln()
            + l * l * (2.0 * l).ln()
            + m * m * (2.0 * m).ln());
    0.5 * (l + m - 2.0).powi(2) * t.ln()
        + 0.5 * ((m - l).powi(2) + 2.0 * l + 2.0 * m - 1.0) * (t + 1.0).ln()
        + 0.5 * (2.0 * l - 1.0) * d.ln()
        + 0.5 * (2.0 * m - 1.0) * (2.0 * t0 + d).ln()
        - (l + m - 1.0) * (t + l + m).ln()
        - 0.5 * (2.0 * l * l - 2.0 * l + 1.0) * ((2.0 * l - 2.0) * t0 + (2.0 * l - 1.0) * d).ln()
        - 0.5 * (2.0 * m * m - 2.0 * m + 1.0) * (2.0 * m * t0 + (2.0 * m - 1.0) * d).ln()
        + c
}

/// Regime-II density as a function of the parameter `t > t₀`.
pub fn phi_regime_ii_of_t(geom: &ScaledGeometry, t: f64) -> Result<f64> {
    geom.require_interior()?;
    let d = t - geom.t0();
    x_of_t_offset(geom, d)?;
    Ok(phi_ii_offset(geom, d))
}

fn phi_symmetric(l: f64, x: f64, regime: Regime) -> f64 {
    let k = (l - 1.0).powi(2);
    match regime {
        Regime::I => 0.5 * x.ln() - k * log_x_over_x_minus_one(x),
        Regime::II => {
            let r = x.sqrt();
            0.25 * x.ln() + (2.0 * l - 1.0) * (2.0 * r / (1.0 + r)).ln() - psi_equal_args(l)
        }
        Regime::III => 0.5 * (2.0 * l - 1.0) * x.ln() + k * (-x).ln_1p(),
    }
}

/// Log-gas free-energy density `Φ(x)`.
pub fn phi(geom: &ScaledGeometry, x: f64) -> Result<f64> {
    require_positive_x(x)?;
    let report = classify(geom, x)?;
    let (l, _) = geom.canonical();
    if geom.is_symmetric() {
        return Ok(phi_symmetric(l, x, report.regime));
    }
    match report.regime {
        Regime::I => phi_regime_i(geom, x),
        _ => Ok(phi_ii_offset(geom, t_offset_of_x(geom, x)?)),
    }
}

/// `f₂(x) = log √x - Φ(x)`, the leading behaviour of `N⁻² log P`.
pub fn f2(geom: &ScaledGeometry, x: f64) -> Result<f64> {
    Ok(0.5 * x.ln() - phi(geom, x)?)
}

/// Free energy per site of the five-vertex model,
/// `F = -f₂/(λμ) - [(λ-1)(μ-1)/(λμ)] log((x-1)/Δ) + [(λμ-2)/(2λμ)] log x - [(λ-2)/λ] log α`.
pub fn free_energy(geom: &ScaledGeometry, w: &WeightParams) -> Result<f64> {
    let (l, m) = (geom.lambda(), geom.mu());
    let (x, delta, alpha) = (w.x(), w.delta(), w.alpha());
    if alpha <= 0.0 {
        return Err(invalid("free energy needs alpha > 0"));
    }
    let ratio = (x - 1.0) / delta;
    if !(ratio > 0.0) {
        return Err(invalid("free energy needs (x-1)/Delta > 0"));
    }
    let lm = l * m;
    Ok(-f2(geom, x)? / lm - (l - 1.0) * (m - 1.0) / lm * ratio.ln() + (lm - 2.0) / (2.0 * lm) * x.ln()
        - (l - 2.0) / l * alpha.ln())
}
