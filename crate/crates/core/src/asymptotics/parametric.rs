//! The rational parametrization `x(t)` of the regime-II end-point system.
//!
//! Internally everything is written in `δ = t - t₀`, because the factor
//! `t + λ - μ` equals `δ` and carries the whole `x → 0` behaviour; working in
//! `δ` keeps tiny `x` accurate.

use super::{require_positive_x, ScaledGeometry};
use crate::error::{invalid, Error, Result};

const MAX_ITERATIONS: usize = 4000;

/// `x(t₀ + δ)` in canonical orientation.
pub fn x_of_t_offset(geom: &ScaledGeometry, delta: f64) -> Result<f64> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(invalid(format!("t must exceed t0 (offset {delta})")));
    }
    Ok(x_of_delta(geom, delta))
}

fn x_of_delta(geom: &ScaledGeometry, d: f64) -> f64 {
    let (l, m) = geom.canonical();
    let t0 = m - l;
    let t = t0 + d;
    let num = (1.0 + t).powi(2) * (2.0 * t0 + d) * d;
    let den = ((2.0 * l - 2.0) * t0 + (2.0 * l - 1.0) * d) * (2.0 * m * t0 + (2.0 * m - 1.0) * d);
    num / den
}

/// `x(t) = (1+t)²(t-λ+μ)(t+λ-μ) / {[(2λ-1)t+λ-μ][(2μ-1)t-λ+μ]}` for `t > t₀`.
pub fn x_of_t(geom: &ScaledGeometry, t: f64) -> Result<f64> {
    let t0 = geom.t0();
    if !(t > t0) {
        return Err(invalid(format!("t = {t} must exceed t0 = {t0}")));
    }
    x_of_t_offset(geom, t - t0)
}

/// `t - t₀` for the unique `t > t₀` with `x(t) = x`.
pub fn t_offset_of_x(geom: &ScaledGeometry, x: f64) -> Result<f64> {
    require_positive_x(x)?;
    let (l, _) = geom.canonical();
    if geom.t0() == 0.0 {
        // λ = μ: x(t) = (1+t)²/(2λ-1)² only covers x > x̃_c.
        let floor = (2.0 * l - 1.0).powi(-2);
        if x <= floor {
            return Err(Error::Domain(format!(
                "x = {x} is below x(t0+) = {floor} in the symmetric parametrization"
            )));
        }
        return Ok((2.0 * l - 1.0) * x.sqrt() - 1.0);
    }
    let target = x.ln();
    let g = |s: f64| x_of_delta(geom, s.exp()).ln() - target;

    // Bracket in s = log δ, using that log x(δ) is increasing.
    let mut lo = -1.0;
    let mut hi = 1.0;
    let mut steps = 0;
    while g(lo) > 0.0 {
        lo -= 2.0 * (hi - lo).max(1.0);
        steps += 1;
        if steps > 200 || !lo.is_finite() {
            return Err(Error::Convergence(format!("cannot bracket t(x) from below at x = {x}")));
        }
    }
    while g(hi) < 0.0 {
        hi += 2.0 * (hi - lo).max(1.0);
        steps += 1;
        if steps > 400 || hi > 700.0 {
            return Err(Error::Convergence(format!("cannot bracket t(x) from above at x = {x}")));
        }
    }
    // Illinois false position with a bisection safeguard.
    let (mut glo, mut ghi) = (g(lo), g(hi));
    let mut side = 0i8;
    for _ in 0..MAX_ITERATIONS {
        let mut s = (lo * ghi - hi * glo) / (ghi - glo);
        if !(s > lo && s < hi) {
            s = 0.5 * (lo + hi);
        }
        let gs = g(s);
        if gs == 0.0 || hi - lo <= 4.0 * f64::EPSILON * hi.abs().max(1.0) {
            return Ok(s.exp());
        }
        if (gs < 0.0) == (glo < 0.0) {
            lo = s;
            glo = gs;
            if side == -1 {
                ghi *= 0.5;
            }
            side = -1;
        } else {
            hi = s;
            ghi = gs;
            if side == 1 {
                glo *= 0.5;
            }
            side = 1;
        }
        if (hi - lo) <= 2.0 * f64::EPSILON * hi.abs().max(lo.abs()).max(1.0) {
            return Ok((0.5 * (lo + hi)).exp());
        }
    }
    Err(Error::Convergence(format!("t(x) did not converge at x = {x}")))
}

/// Unique `t ∈ (t₀, ∞)` with `x(t) = x`.
pub fn t_of_x(geom: &ScaledGeometry, x: f64) -> Result<f64> {
    Ok(geom.t0() + t_offset_of_x(geom, x)?)
}
